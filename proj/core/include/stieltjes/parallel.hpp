#ifndef STIELTJES_PARALLEL_HPP
#define STIELTJES_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace stieltjes {

/// Thread cap: STIELTJES_THREADS when set, otherwise hardware concurrency.
int max_threads();

/// Deterministic chunked sum of fn(i) for i in [0, n): the index range is cut
/// into a fixed number of chunks, partial sums are combined in chunk order, so
/// the result is bit-identical for every thread count.
double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& fn);

/// Deterministic chunked max of fn(i); ties resolved toward the lowest index.
struct MaxResult {
  double value;
  std::size_t index;
};
MaxResult chunked_max(std::size_t n, const std::function<double(std::size_t)>& fn);

}  // namespace stieltjes

#endif
