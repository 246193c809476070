#include "stieltjes/extend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "stieltjes/parallel.hpp"

namespace stieltjes {

DistributionFunction1D staircase_cdf(int n) {
  if (n < 1) throw error("staircase_cdf: level must be >= 1");
  std::vector<std::pair<double, double>> jumps;
  jumps.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    jumps.emplace_back(static_cast<double>(k) / (n + 1), 1.0 / n);
  return DistributionFunction1D::from_jumps(AxisBounds{0.0, 1.0, true, true}, std::move(jumps));
}

GridField discretize_semicopula(const SemiCopula& S, int n) {
  const int d = S.dims();
  const DistributionFunction1D Fn = staircase_cdf(n);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) + 2);
  coords.push_back(0.0);
  for (int k = 1; k <= n; ++k) coords.push_back(static_cast<double>(k) / (n + 1));
  coords.push_back(1.0);
  GridMesh mesh(std::vector<std::vector<double>>(static_cast<std::size_t>(d), coords));

  auto Sn_eval = [S, Fn, d](std::span<const double> x) {
    Point u(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i)] = Fn(x[static_cast<std::size_t>(i)]);
    return S(u);
  };
  TaggedFunction Sn(BoxDomain::unit_cube(d), Sn_eval, ContinuityTag::RightContinuous, true, 1.0,
                    "discretized_semicopula");
  return GridField::sample(Sn, mesh);
}

namespace {

// pi_g(S_bar) by midpoint quadrature of the survival marginals against the
// grid quasi-volumes of the corresponding marginals of g.
double ibp_reference(const TaggedFunction& g, const TaggedFunction& Sbar, int cells,
                     const LimitScheme& scheme) {
  const int d = g.dims();
  double total = 0.0;
  for (SubsetIndex I : enumerate_subsets(d, /*include_empty=*/false)) {
    if (g.declared_grounded() && I != SubsetIndex::full(d)) continue;
    const int k = I.count();
    const GridMesh sub = GridMesh::uniform(BoxDomain::unit_cube(k), cells);
    const GridField gI = GridField::sample(lower_marginal(g, I, scheme), sub);
    const TaggedFunction SbarI = lower_marginal(Sbar, I, scheme);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sizes[static_cast<std::size_t>(i)] = sub.size(i) - 1;
    total += chunked_sum(sub.cell_count(), [&](std::size_t c) {
      std::vector<std::size_t> cell(static_cast<std::size_t>(k));
      std::size_t rest = c;
      for (int i = k - 1; i >= 0; --i) {
        cell[static_cast<std::size_t>(i)] = rest % sizes[static_cast<std::size_t>(i)];
        rest /= sizes[static_cast<std::size_t>(i)];
      }
      const double w = gI.cell_delta(cell);
      if (w == 0.0) return 0.0;
      Point mid(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        const auto& ax = sub.axis(i);
        const std::size_t ci = cell[static_cast<std::size_t>(i)];
        mid[static_cast<std::size_t>(i)] = 0.5 * (ax[ci] + ax[ci + 1]);
      }
      return w * SbarI(mid);
    });
  }
  total += corner_value(Sbar, CornerSide::Lower, scheme) * corner_value(g, CornerSide::Lower, scheme);
  return total;
}

// dyadic midpoint probe of int_0^1 g_I(u,...,u) du; true when it stabilizes
bool diagonal_integral_stabilizes(const TaggedFunction& g, const LimitScheme& scheme) {
  const int d = g.dims();
  for (SubsetIndex I : enumerate_subsets(d, /*include_empty=*/false)) {
    const TaggedFunction gI = lower_marginal(g, I, scheme);
    const int k = I.count();
    double prev = 0.0;
    bool have_prev = false, ok = false;
    for (int m : {32, 64, 128, 256}) {
      double sum = 0.0;
      Point u(static_cast<std::size_t>(k));
      for (int j = 0; j < m; ++j) {
        const double t = (j + 0.5) / m;
        std::fill(u.begin(), u.end(), t);
        const double v = gI(u);
        if (!std::isfinite(v)) return false;
        sum += v / m;
      }
      if (have_prev && std::abs(sum - prev) < 1e-3 * std::max(1.0, std::abs(sum))) {
        ok = true;
        break;
      }
      prev = sum;
      have_prev = true;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ConvergenceTable extended_integral(const TaggedFunction& g, const SemiCopula& S,
                                   const std::vector<int>& levels,
                                   const ConvergenceOptions& options, const LimitScheme& scheme) {
  if (!is_left(g.tag()))
    throw hypothesis_error("extended_integral: g must be left-tagged (or continuous)");
  if (g.dims() != S.dims()) throw dimension_error("extended_integral: dimension mismatch");
  if (levels.empty()) throw error("extended_integral: need at least one level");
  for (std::size_t k = 0; k + 1 < levels.size(); ++k)
    if (!(levels[k] < levels[k + 1])) throw error("extended_integral: levels must increase");

  ConvergenceTable table;
  table.levels = levels;
  table.truncation_note = g.domain().bounded()
                              ? "compact domain; no truncation applied"
                              : "unbounded domain handled via the transformation formula";

  if (options.probe_integrability && !diagonal_integral_stabilizes(g, scheme))
    table.integrability_warning = true;

  for (int n : levels) {
    const GridField Sn = discretize_semicopula(S, n);
    const AtomicSignedMeasure nu = extract_measure(Sn);
    table.psi_values.push_back(psi(g, nu));
  }

  const int ref = options.reference_cells > 0 ? options.reference_cells
                                              : (g.dims() <= 2 ? 1024 : 128);
  table.limit = ibp_reference(g, survival(S.as_function(), scheme), ref, scheme);
  for (double v : table.psi_values) table.residuals.push_back(std::abs(v - table.limit));
  return table;
}

LipschitzBoundReport lipschitz_survival_bound(const SemiCopula& S, const GridMesh& mesh) {
  if (mesh.dims() != S.dims()) throw dimension_error("lipschitz_survival_bound: dimension mismatch");
  const int d = S.dims();
  const double L = S.lipschitz();
  const double beta = L * std::ldexp(1.0, d - 2) + 1.0;
  const TaggedFunction Sbar = survival(S.as_function());

  std::vector<std::size_t> sizes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) sizes[static_cast<std::size_t>(i)] = mesh.size(i);

  const MaxResult best = chunked_max(mesh.node_count(), [&](std::size_t flat) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(d));
    std::size_t rest = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = rest % sizes[static_cast<std::size_t>(i)];
      rest /= sizes[static_cast<std::size_t>(i)];
    }
    Point u(static_cast<std::size_t>(d));
    double umax = -kInf;
    for (int i = 0; i < d; ++i) {
      u[static_cast<std::size_t>(i)] = mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
      umax = std::max(umax, u[static_cast<std::size_t>(i)]);
    }
    if (umax >= 1.0) return -kInf;  // the bound degenerates on the upper faces
    return std::abs(Sbar(u)) / (beta * (1.0 - umax));
  });

  LipschitzBoundReport rep;
  rep.max_ratio = best.value;
  rep.lipschitz_used = L;
  rep.witness.resize(static_cast<std::size_t>(d));
  std::size_t rest = best.index;
  for (int i = d - 1; i >= 0; --i) {
    rep.witness[static_cast<std::size_t>(i)] = mesh.axis(i)[rest % sizes[static_cast<std::size_t>(i)]];
    rest /= sizes[static_cast<std::size_t>(i)];
  }
  return rep;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "n,psi,residual\n";
  char buf[128];
  for (std::size_t k = 0; k < table.levels.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g", table.levels[k], table.psi_values[k],
                  table.residuals[k]);
    os << buf << "\n";
  }
}

}  // namespace stieltjes
