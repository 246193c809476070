#ifndef STIELTJES_EXTEND_HPP
#define STIELTJES_EXTEND_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "stieltjes/integrate.hpp"

namespace stieltjes {

/// Staircase approximation of the uniform distribution: jumps of mass 1/n at
/// k/(n+1), k = 1..n. Right-continuous, support strictly inside (0,1),
/// F_n(u) -> u pointwise.
DistributionFunction1D staircase_cdf(int n);

/// S_n = S o (F_n, ..., F_n) sampled on the jump-point mesh; right-tagged,
/// grounded, measure inducing with at most n^d atoms on the jump lattice.
GridField discretize_semicopula(const SemiCopula& S, int n);

struct ConvergenceOptions {
  /// Cells per axis of the reference mesh for the pi_g(S_bar) limit;
  /// 0 picks 1024 for d <= 2 and 128 otherwise.
  int reference_cells = 0;
  /// Probe the diagonal integrability condition int_0^1 g_I(u,...,u) du.
  bool probe_integrability = true;
};

/// Extension of the integral to a semi-copula integrator:
/// int g dS := pi_g(S_bar) = lim_n psi_{S_n}(g).
struct ConvergenceTable {
  std::vector<int> levels;
  std::vector<double> psi_values;
  double limit = 0.0;               // pi_g(S_bar)
  std::vector<double> residuals;    // |psi_value - limit|
  bool integrability_warning = false;
  std::string truncation_note;
};
ConvergenceTable extended_integral(const TaggedFunction& g, const SemiCopula& S,
                                   const std::vector<int>& levels,
                                   const ConvergenceOptions& options = {},
                                   const LimitScheme& scheme = {});

/// Mesh sweep of |S_bar(u)| / ((L 2^{d-2} + 1)(1 - max u_i)) over points with
/// max u_i < 1; a max ratio <= 1 certifies the Lipschitz survival bound there.
struct LipschitzBoundReport {
  double max_ratio = 0.0;
  Point witness;
  double lipschitz_used = 0.0;
};
LipschitzBoundReport lipschitz_survival_bound(const SemiCopula& S, const GridMesh& mesh);

/// CSV form "n,psi,residual" with 17 significant digits.
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

}  // namespace stieltjes

#endif
