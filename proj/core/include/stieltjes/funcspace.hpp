#ifndef STIELTJES_FUNCSPACE_HPP
#define STIELTJES_FUNCSPACE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/domain.hpp"

namespace stieltjes {

/// Componentwise continuity declaration. Continuous satisfies both one-sided tags.
enum class ContinuityTag { LeftContinuous, RightContinuous, Continuous, Untagged };

inline bool is_left(ContinuityTag t) {
  return t == ContinuityTag::LeftContinuous || t == ContinuityTag::Continuous;
}
inline bool is_right(ContinuityTag t) {
  return t == ContinuityTag::RightContinuous || t == ContinuityTag::Continuous;
}

std::string to_string(ContinuityTag t);
ContinuityTag tag_from_string(const std::string& s);

/// Scheme for numerically resolving one-sided iterated limits.
///
/// Finite endpoints are approached geometrically (offset eps0 * 2^-k); infinite
/// endpoints are approached by doubling (anchor * 2^k). A limit is accepted when
/// two successive evaluations differ by less than `stabilization_tol`. The limits
/// are evaluated in axis order and in reverse order; a gap above `order_tol`
/// is reported as order sensitivity.
struct LimitScheme {
  double initial_offset = 1e-2;
  double stabilization_tol = 1e-9;
  int max_halvings = 40;
  double order_tol = 1e-7;
  bool check_reverse_order = true;
  double infinite_anchor = 1.0;
};

/// An evaluable d-variate function with a continuity tag and declared properties.
class TaggedFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  TaggedFunction(BoxDomain domain, Evaluator evaluator, ContinuityTag tag,
                 bool grounded = false, std::optional<double> bound = std::nullopt,
                 std::string family = "custom");

  double operator()(std::span<const double> x) const { return eval_(x); }
  double operator()(std::initializer_list<double> x) const {
    return eval_(std::span<const double>(x.begin(), x.size()));
  }

  const BoxDomain& domain() const { return domain_; }
  int dims() const { return domain_.dims(); }
  ContinuityTag tag() const { return tag_; }
  bool declared_grounded() const { return grounded_; }
  std::optional<double> declared_bound() const { return bound_; }
  const std::string& family() const { return family_; }

  TaggedFunction with_tag(ContinuityTag t) const;
  TaggedFunction with_grounded(bool g) const;
  TaggedFunction with_bound(std::optional<double> b) const;

 private:
  BoxDomain domain_;
  Evaluator eval_;
  ContinuityTag tag_;
  bool grounded_;
  std::optional<double> bound_;
  std::string family_;
};

enum class CornerSide { Lower, Upper };

/// Lower I-marginal f_I: coordinates outside I are sent to the lower domain
/// boundary by the iterated limit; for axes with a closed finite lower endpoint
/// and a Continuous/RightContinuous tag the endpoint is evaluated directly.
/// I must be nonempty; for the full set this returns f itself.
TaggedFunction lower_marginal(const TaggedFunction& f, SubsetIndex I,
                              const LimitScheme& scheme = {});

/// Upper I-marginal f^I (mirror of lower_marginal toward the upper boundary;
/// the direct-evaluation fast path needs a Continuous/LeftContinuous tag).
TaggedFunction upper_marginal(const TaggedFunction& f, SubsetIndex I,
                              const LimitScheme& scheme = {});

/// The empty-set marginal f_empty / f^empty: the iterated limit over all axes.
double corner_value(const TaggedFunction& f, CornerSide side, const LimitScheme& scheme = {});

/// Survival function: f_bar(x) = sum over I of (-1)^|I| f^I(x_I), the I=empty
/// term being f^empty. Requires all upper marginals; divergence propagates.
TaggedFunction survival(const TaggedFunction& f, const LimitScheme& scheme = {});

/// Grounded core F^f(x) = f(x) - sum_{I proper} (-1)^{d-|I|-1} f_I(x_I).
/// The result is grounded whatever f is (Lemma on F^f).
TaggedFunction grounded_core(const TaggedFunction& f, const LimitScheme& scheme = {});

/// Numeric groundedness probe: max |f| over slices at offsets a_j + eps
/// for each axis; passes when the final-offset maximum is below `tol`.
struct GroundednessProbe {
  bool grounded = false;
  double worst_value = 0.0;
  int worst_axis = -1;
};
GroundednessProbe probe_groundedness(const TaggedFunction& f, const GridMesh& mesh,
                                     double tol = 1e-8, const LimitScheme& scheme = {});

// ---------------------------------------------------------------------------
// Distribution functions
// ---------------------------------------------------------------------------

/// A univariate distribution function: nondecreasing, right-continuous,
/// limits 0 at the lower and 1 at the upper end of its axis. Discrete
/// distributions carry an explicit jump list (support point, mass).
class DistributionFunction1D {
 public:
  static DistributionFunction1D from_jumps(AxisBounds axis,
                                           std::vector<std::pair<double, double>> jumps);
  static DistributionFunction1D from_function(AxisBounds axis, std::function<double(double)> f);

  double operator()(double x) const;

  /// Generalized inverse F^[-1](t) = inf{x : F(x) >= t}, with inf empty = upper bound.
  /// Left-continuous; exact jump-list binary search for discrete distributions.
  double inverse(double t) const;

  const AxisBounds& axis() const { return axis_; }
  bool discrete() const { return !jumps_.empty(); }
  const std::vector<std::pair<double, double>>& jumps() const { return jumps_; }

  TaggedFunction as_function() const;  // d=1, RightContinuous

 private:
  DistributionFunction1D() = default;
  AxisBounds axis_;
  std::vector<std::pair<double, double>> jumps_;       // sorted by point
  std::vector<double> cumulative_;                     // running mass
  std::function<double(double)> fn_;                   // used when jumps_ empty
};

// ---------------------------------------------------------------------------
// Semi-copulas
// ---------------------------------------------------------------------------

enum class SemiCopulaKind { Independence, UpperFrechet, LowerFrechet, ConvexCombination, UserDefined };

/// A semi-copula on [0,1]^d: uniform marginals and componentwise increasing,
/// with a declared or estimated Lipschitz constant (w.r.t. the l1 norm).
class SemiCopula {
 public:
  static SemiCopula independence(int dims);
  static SemiCopula upper_frechet(int dims);
  static SemiCopula lower_frechet(int dims);
  static SemiCopula convex_combination(SemiCopula a, SemiCopula b, double weight_a);
  static SemiCopula user_defined(int dims, TaggedFunction::Evaluator eval, double lipschitz);

  double operator()(std::span<const double> u) const { return eval_(u); }
  double operator()(std::initializer_list<double> u) const {
    return eval_(std::span<const double>(u.begin(), u.size()));
  }

  int dims() const { return dims_; }
  SemiCopulaKind kind() const { return kind_; }
  double lipschitz() const { return lipschitz_; }

  /// View as a tagged function on the closed unit cube (Continuous, grounded, bound 1).
  TaggedFunction as_function() const;

 private:
  SemiCopula(int dims, SemiCopulaKind kind, double lipschitz, TaggedFunction::Evaluator eval)
      : dims_(dims), kind_(kind), lipschitz_(lipschitz), eval_(std::move(eval)) {}
  int dims_;
  SemiCopulaKind kind_;
  double lipschitz_;
  TaggedFunction::Evaluator eval_;
};

/// Axiom check on a mesh of [0,1]^d. The Lipschitz estimate is the max of
/// |Delta S| / |Delta u|_1 over axis-adjacent mesh pairs.
struct SemiCopulaReport {
  bool uniform_marginals = false;
  bool increasing = false;
  bool grounded = false;
  double lipschitz_estimate = 0.0;
  double worst_marginal_error = 0.0;
};
SemiCopulaReport check_semicopula(const SemiCopula& S, const GridMesh& mesh);

// ---------------------------------------------------------------------------
// Step-function factories (atomic fixtures)
// ---------------------------------------------------------------------------

struct WeightedPoint {
  Point position;
  double weight;
};

/// Left-continuous step g(x) = constant + sum w * 1{p < x componentwise}.
/// Induces the atomic measure with the given atoms; g_empty = constant when
/// all atoms lie strictly inside the domain.
TaggedFunction left_step(BoxDomain domain, std::vector<WeightedPoint> atoms, double constant = 0.0);

/// Right-continuous step h(x) = constant + sum w * 1{p <= x componentwise}.
TaggedFunction right_step(BoxDomain domain, std::vector<WeightedPoint> atoms, double constant = 0.0);

}  // namespace stieltjes

#endif
