#ifndef STIELTJES_ERRORS_HPP
#define STIELTJES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stieltjes {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension outside the supported range (1..16) or mismatched between arguments.
class dimension_error : public error {
 public:
  using error::error;
};

/// An operation received an empty or out-of-range subset index.
class invalid_subset_error : public error {
 public:
  using error::error;
};

/// An iterated limit failed to stabilize, or stabilized to order-dependent values.
class limit_divergence_error : public error {
 public:
  limit_divergence_error(const std::string& what, double residual)
      : error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// A lower/upper marginal limit diverged; carries the last observed residual.
class marginal_divergence_error : public limit_divergence_error {
 public:
  using limit_divergence_error::limit_divergence_error;
};

/// The diagonal corner limit f_empty / f^empty diverged.
class corner_divergence_error : public limit_divergence_error {
 public:
  using limit_divergence_error::limit_divergence_error;
};

/// An operation that needs a one-sided or continuous tag got an untagged function.
class tag_required_error : public error {
 public:
  using error::error;
};

/// Function evaluation produced a non-finite value (names the offending point).
class evaluation_error : public error {
 public:
  using error::error;
};

/// A coordinate transform was not strictly increasing on the given data.
class transform_error : public error {
 public:
  using error::error;
};

/// Integration-by-parts hypotheses missing (groundedness/boundedness/tags).
class hypothesis_error : public error {
 public:
  using error::error;
};

/// Malformed function-spec document or data file.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace stieltjes

#endif
