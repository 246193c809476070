#include "stieltjes/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

namespace stieltjes {

int max_threads() {
  if (const char* env = std::getenv("STIELTJES_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

constexpr std::size_t kChunks = 64;

template <typename Partial, typename PerChunk>
void run_chunks(std::size_t n, std::vector<Partial>& partials, const PerChunk& per_chunk) {
  const std::size_t nchunks = std::min<std::size_t>(kChunks, n);
  partials.resize(nchunks);
  const int nthreads = std::min<int>(max_threads(), static_cast<int>(nchunks));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      const std::size_t lo = n * c / nchunks;
      const std::size_t hi = n * (c + 1) / nchunks;
      per_chunk(c, lo, hi);
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
}

}  // namespace

double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& fn) {
  if (n == 0) return 0.0;
  std::vector<double> partials;
  run_chunks(n, partials, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    partials[c] = s;
  });
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

MaxResult chunked_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  if (n == 0) return {-std::numeric_limits<double>::infinity(), 0};
  std::vector<MaxResult> partials;
  run_chunks(n, partials, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    MaxResult best{-std::numeric_limits<double>::infinity(), lo};
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = fn(i);
      if (v > best.value) best = {v, i};
    }
    partials[c] = best;
  });
  MaxResult best = partials.front();
  for (const MaxResult& p : partials)
    if (p.value > best.value) best = p;
  return best;
}

}  // namespace stieltjes
