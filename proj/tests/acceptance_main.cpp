// Acceptance suite: one pass/fail line per criterion, exit code = failure count.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stieltjes/extend.hpp"
#include "stieltjes/integrate.hpp"
#include "stieltjes/variation.hpp"

using namespace stieltjes;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. g = h = 1{x>=1} on [0,2]: psi_h(g) = 1 and pi_g(h_bar) = 0 exactly, < 1 s.
Outcome criterion_jump() {
  const auto start = std::chrono::steady_clock::now();
  TaggedFunction g(BoxDomain::cube(1, 0.0, 2.0),
                   [](std::span<const double> x) { return x[0] >= 1.0 ? 1.0 : 0.0; },
                   ContinuityTag::RightContinuous, true, 1.0);
  GridMesh mesh({{0.0, 1.0, 2.0}});
  const IbpReport rep = ibp_check(g, g, mesh);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = rep.lhs == 1.0 && rep.rhs == 0.0 && rep.hypothesis_violated && secs < 1.0;
  out.detail = "psi=" + fmt(rep.lhs) + " pi=" + fmt(rep.rhs) + " flagged=" +
               (rep.hypothesis_violated ? "yes" : "no") + " (" + fmt(secs) + " s)";
  return out;
}

// 2. IBP identity against the Fubini double-sum oracle: 200 seeded cases per
//    d in {1,2,3}, residual < 1e-10, total < 30 s.
Outcome criterion_ibp_identity() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d : {1, 2, 3}) {
    for (int seed = 0; seed < 200; ++seed) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(10000 * d + seed));
      const auto g = oracle::random_g(rng, d, false);
      const auto h = oracle::random_h(rng, d);
      const TaggedFunction gt = fixtures::as_tagged(g, BoxDomain::unit_cube(d));
      const TaggedFunction ht = fixtures::as_tagged(h, BoxDomain::unit_cube(d));
      const IbpReport rep = ibp_check(gt, ht, fixtures::fixture_mesh(g, h));
      const double lhs_oracle = oracle::fubini_lhs(g, h);
      const double rhs_oracle = oracle::fubini_rhs(g, h);
      worst = std::max({worst, rep.residual, std::abs(rep.lhs - lhs_oracle),
                        std::abs(rep.rhs - rhs_oracle)});
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = worst < 1e-10 && secs < 30.0;
  out.detail = "600 cases, worst residual " + fmt(worst) + " (" + fmt(secs) + " s)";
  return out;
}

// 3. Grounded corollary: int g d(nu_h) = int h_bar d(nu_g) within 1e-10, 100 cases.
Outcome criterion_grounded_corollary() {
  double worst = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(40000 + seed));
    const int d = 1 + seed % 3;
    const auto g = oracle::random_g(rng, d, /*grounded_only=*/true);
    const auto h = oracle::random_h(rng, d);
    const TaggedFunction gt = fixtures::as_tagged(g, BoxDomain::unit_cube(d));
    const TaggedFunction ht = fixtures::as_tagged(h, BoxDomain::unit_cube(d));
    const GridMesh mesh = fixtures::fixture_mesh(g, h);
    const double lhs = psi(gt, extract_measure(GridField::sample(ht, mesh)));
    const double rhs = psi(survival(ht), extract_measure(GridField::sample(gt, mesh)));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  Outcome out;
  out.pass = worst < 1e-10;
  out.detail = "100 cases, worst residual " + fmt(worst);
  return out;
}

// 4. nu_{g_{1}} is null while nu_g^{1} = delta_1: TV distance 1.
Outcome criterion_marginal_mismatch() {
  TaggedFunction g(BoxDomain::nonneg_orthant(2),
                   [](std::span<const double> x) { return (x[0] > 1.0 && x[1] > 1.0) ? 1.0 : 0.0; },
                   ContinuityTag::LeftContinuous, false, 1.0);
  GridMesh mesh({{0.0, 0.5, 1.0, 2.0, 3.0}, {0.0, 0.5, 1.0, 2.0, 3.0}});
  const auto nu_g = extract_measure(GridField::sample(g, mesh));
  const auto I = SubsetIndex::single(0);
  const auto marginal_fun =
      extract_measure(GridField::sample(lower_marginal(g, I), mesh.restrict_to(I)));
  const auto marginal_meas = marginal_measure(nu_g, I);
  const double tv = total_variation_distance(marginal_fun, marginal_meas);
  Outcome out;
  out.pass = marginal_fun.atoms().empty() && std::abs(tv - 1.0) < 1e-15;
  out.detail = "nu_{g_I} atoms=" + std::to_string(marginal_fun.atoms().size()) +
               ", TV distance " + fmt(tv);
  return out;
}

// 5. Survival identities on meshes: C_bar = C - u - v + 1 (64^2, 1e-12) and
//    M_bar^d = 1 - max u (d in {2,3}).
Outcome criterion_survival_identities() {
  double worst = 0.0;
  const GridMesh mesh2 = GridMesh::uniform(BoxDomain::unit_cube(2), 64);
  for (auto S : {SemiCopula::independence(2), SemiCopula::upper_frechet(2),
                 SemiCopula::lower_frechet(2)}) {
    const TaggedFunction C = S.as_function();
    const TaggedFunction Cbar = survival(C);
    for (double u : mesh2.axis(0))
      for (double v : mesh2.axis(1))
        worst = std::max(worst, std::abs(Cbar({u, v}) - (C({u, v}) - u - v + 1.0)));
  }
  double worst_frechet = 0.0;
  for (int d : {2, 3}) {
    const GridMesh mesh = GridMesh::uniform(BoxDomain::unit_cube(d), d == 2 ? 64 : 32);
    const TaggedFunction Mbar = survival(SemiCopula::upper_frechet(d).as_function());
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    Point u(static_cast<std::size_t>(d));
    bool done = false;
    while (!done) {
      double mx = 0.0;
      for (int i = 0; i < d; ++i) {
        u[static_cast<std::size_t>(i)] = mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
        mx = std::max(mx, u[static_cast<std::size_t>(i)]);
      }
      worst_frechet = std::max(worst_frechet, std::abs(Mbar(u) - (1.0 - mx)));
      done = true;
      for (int i = d - 1; i >= 0; --i) {
        auto& k = idx[static_cast<std::size_t>(i)];
        if (++k < mesh.size(i)) {
          done = false;
          break;
        }
        k = 0;
      }
    }
  }
  Outcome out;
  out.pass = worst < 1e-12 && worst_frechet < 1e-12;
  out.detail = "copula worst " + fmt(worst) + ", Frechet worst " + fmt(worst_frechet);
  return out;
}

// 6. survival(upper marginal) = lower marginal(survival) for grounded fixtures
//    on 32^d meshes, d in {2,3}, within 1e-10.
Outcome criterion_survival_marginal() {
  double worst = 0.0;
  auto sweep = [&worst](const TaggedFunction& f, const GridMesh& mesh) {
    const int d = f.dims();
    const TaggedFunction fbar = survival(f);
    for (SubsetIndex I : enumerate_subsets(d, false)) {
      if (I == SubsetIndex::full(d)) continue;
      const TaggedFunction lhs = survival(upper_marginal(f, I));
      const TaggedFunction rhs = lower_marginal(fbar, I);
      const GridMesh sub = mesh.restrict_to(I);
      const int k = I.count();
      std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
      Point p(static_cast<std::size_t>(k));
      bool done = false;
      while (!done) {
        for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = sub.axis(i)[idx[static_cast<std::size_t>(i)]];
        worst = std::max(worst, std::abs(lhs(p) - rhs(p)));
        done = true;
        for (int i = k - 1; i >= 0; --i) {
          auto& kk = idx[static_cast<std::size_t>(i)];
          if (++kk < sub.size(i)) {
            done = false;
            break;
          }
          kk = 0;
        }
      }
    }
  };
  for (int d : {2, 3}) {
    const GridMesh mesh = GridMesh::uniform(BoxDomain::unit_cube(d), 32);
    sweep(SemiCopula::independence(d).as_function(), mesh);
    sweep(SemiCopula::upper_frechet(d).as_function(), mesh);
    TaggedFunction expprod(BoxDomain::nonneg_orthant(d),
                           [d](std::span<const double> x) {
                             double p = 1.0;
                             for (int i = 0; i < d; ++i) p *= 1.0 - std::exp(-x[static_cast<std::size_t>(i)]);
                             return p;
                           },
                           ContinuityTag::Continuous, true, 1.0);
    sweep(expprod, GridMesh::uniform(BoxDomain::cube(d, 0.0, 4.0), 32));
  }
  Outcome out;
  out.pass = worst < 1e-10;
  out.detail = "worst pointwise gap " + fmt(worst);
  return out;
}

// 7. Variation dichotomy probe. The divergent fixtures 1{x+y>=1} and W^3 must
//    grow by >= 1.5x per doubling at 16->32->64; the spec additionally demands
//    that 1{x>=y} stabilizes by n = 64, which the cell-sum oracle contradicts
//    (its HK profile is exactly 2n). The clause is asserted as stated.
Outcome criterion_variation_dichotomy() {
  const std::vector<int> levels{16, 32, 64};
  TaggedFunction diag(BoxDomain::unit_cube(2),
                      [](std::span<const double> x) { return x[0] >= x[1] ? 1.0 : 0.0; },
                      ContinuityTag::Untagged);
  TaggedFunction anti(BoxDomain::unit_cube(2),
                      [](std::span<const double> x) { return x[0] + x[1] >= 1.0 ? 1.0 : 0.0; },
                      ContinuityTag::Untagged);
  const auto prof_diag = variation_profile(diag, levels);
  const auto prof_anti = variation_profile(anti, levels);
  const auto prof_w3 = variation_profile(SemiCopula::lower_frechet(3).as_function(), levels);

  const bool diag_stable =
      std::abs(prof_diag[2].second - prof_diag[1].second) / prof_diag[1].second < 1e-3;
  auto grows = [](const std::vector<std::pair<int, double>>& p) {
    return p[1].second >= 1.5 * p[0].second && p[2].second >= 1.5 * p[1].second;
  };
  // frozen oracle sequences: anti = 2n+1, W3 = n
  const bool anti_expected = std::abs(prof_anti[0].second - 33.0) < 1e-9 &&
                             std::abs(prof_anti[1].second - 65.0) < 1e-9 &&
                             std::abs(prof_anti[2].second - 129.0) < 1e-9;
  const bool w3_expected = std::abs(prof_w3[0].second - 16.0) < 1e-9 &&
                           std::abs(prof_w3[1].second - 32.0) < 1e-9 &&
                           std::abs(prof_w3[2].second - 64.0) < 1e-9;

  Outcome out;
  out.pass = diag_stable && grows(prof_anti) && grows(prof_w3) && anti_expected && w3_expected;
  out.detail = "1{x>=y} HK " + fmt(prof_diag[0].second) + "," + fmt(prof_diag[1].second) + "," +
               fmt(prof_diag[2].second) + (diag_stable ? " stabilized" : " grew (factor 2 per doubling; stabilization by n=64 not attained)") +
               "; 1{x+y>=1} HK " + fmt(prof_anti[0].second) + "," + fmt(prof_anti[1].second) +
               "," + fmt(prof_anti[2].second) + "; W3 HK " + fmt(prof_w3[0].second) + "," +
               fmt(prof_w3[1].second) + "," + fmt(prof_w3[2].second);
  return out;
}

// 8. Decomposition of x^2 - 2x on [0,3], n = 300: matches the closed-form
//    split within 2*(3/300); variation additivity exact at grid scale.
Outcome criterion_decomposition() {
  const int n = 300;
  const GridMesh mesh = GridMesh::uniform(BoxDomain::cube(1, 0.0, 3.0), n);
  TaggedFunction f(BoxDomain::cube(1, 0.0, 3.0),
                   [](std::span<const double> x) { return x[0] * x[0] - 2.0 * x[0]; },
                   ContinuityTag::RightContinuous);
  const GridField field = GridField::sample(f, mesh);
  const Decomposition dec = decompose(field);
  const double tol = 2.0 * (3.0 / n);
  double worst = 0.0;
  for (std::size_t k = 0; k < mesh.size(0); ++k) {
    const double x = mesh.axis(0)[k];
    const double gpaper = (x >= 1.0) ? x * x - 2.0 * x + 1.0 : 0.0;
    const double hpaper = (x < 1.0) ? -(x * x - 2.0 * x + 1.0) + 1.0 : 1.0;
    worst = std::max({worst, std::abs(dec.positive_part.values()[k] - gpaper),
                      std::abs(dec.negative_part.values()[k] - hpaper)});
  }
  // additivity of HK variation at grid scale (single axis: cell masses)
  double abs_sum = 0.0, pos_sum = 0.0, neg_sum = 0.0;
  std::vector<std::size_t> cell(1, 0);
  for (std::size_t c = 0; c + 1 < mesh.size(0); ++c) {
    cell[0] = c;
    abs_sum += std::abs(field.cell_delta(cell));
    pos_sum += dec.positive_part.cell_delta(cell);
    neg_sum += dec.negative_part.cell_delta(cell);
  }
  const double additivity_gap = std::abs(abs_sum - (pos_sum + neg_sum));
  Outcome out;
  out.pass = worst < tol && additivity_gap < 1e-12;
  out.detail = "worst node gap " + fmt(worst) + " (tol " + fmt(tol) + "), additivity gap " +
               fmt(additivity_gap);
  return out;
}

// 9. Transformation formula on 100 seeded discrete-F fixtures per d in {1,2},
//    atoms bracketed by the distribution support: residual < 1e-10.
Outcome criterion_transformation() {
  double worst = 0.0;
  for (int d : {1, 2}) {
    for (int seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(70000 * d + seed));
      const auto g = oracle::random_g(rng, d, false);
      const TaggedFunction gt = fixtures::as_tagged(g, BoxDomain::unit_cube(d));
      std::uniform_real_distribution<double> mid(0.15, 0.85);
      std::vector<DistributionFunction1D> F;
      std::vector<std::vector<double>> axes(static_cast<std::size_t>(d),
                                            std::vector<double>{0.0, 1.0});
      for (int i = 0; i < d; ++i) {
        F.push_back(DistributionFunction1D::from_jumps(
            AxisBounds{0.0, 1.0, true, true},
            {{0.03, 0.2}, {mid(rng), 0.3}, {mid(rng), 0.2}, {0.96, 0.3}}));
      }
      for (const auto& [mask, atoms] : g.components) {
        std::vector<int> comp_axes;
        for (int i = 0; i < d; ++i)
          if ((mask >> i) & 1u) comp_axes.push_back(i);
        for (const auto& a : atoms)
          for (std::size_t k = 0; k < comp_axes.size(); ++k)
            axes[static_cast<std::size_t>(comp_axes[k])].push_back(a.pos[k]);
      }
      const GridMesh mesh = GridMesh::from_coordinates(axes);
      std::uniform_real_distribution<double> cdist(0.2, 0.8);
      std::vector<double> c(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = cdist(rng);
      TaggedFunction h(BoxDomain::unit_cube(d),
                       [c, d](std::span<const double> u) {
                         double p = 1.0;
                         for (int i = 0; i < d; ++i)
                           p *= c[static_cast<std::size_t>(i)] + u[static_cast<std::size_t>(i)];
                         return p;
                       },
                       ContinuityTag::Continuous);
      worst = std::max(worst, transform_check(gt, F, h, mesh).residual);
    }
  }
  Outcome out;
  out.pass = worst < 1e-10;
  out.detail = "200 cases, worst residual " + fmt(worst);
  return out;
}

// 10. Extension convergence against the 1-D quadrature oracles:
//     psi_{S_n}(uv) -> 1/3 (upper Frechet) and -> 1/4 (independence),
//     residual < 1e-3 at n = 256, nonincreasing after n = 16, < 60 s.
Outcome criterion_extension() {
  const auto start = std::chrono::steady_clock::now();
  TaggedFunction g(BoxDomain::unit_cube(2),
                   [](std::span<const double> u) { return u[0] * u[1]; },
                   ContinuityTag::LeftContinuous, true, 1.0);
  // independent 1-D quadrature oracles (composite Simpson)
  auto simpson = [](const std::function<double(double)>& f) {
    const int m = 4096;
    double s = f(0.0) + f(1.0);
    for (int k = 1; k < m; ++k) s += f(k / static_cast<double>(m)) * (k % 2 ? 4.0 : 2.0);
    return s / (3.0 * m);
  };
  const double comonotone_limit = simpson([](double t) { return t * t; });
  const double product_limit = [&] {
    const double m1 = simpson([](double t) { return t; });
    return m1 * m1;
  }();

  const std::vector<int> levels{8, 16, 32, 64, 128, 256};
  const auto tM = extended_integral(g, SemiCopula::upper_frechet(2), levels);
  const auto tP = extended_integral(g, SemiCopula::independence(2), levels);

  auto check_table = [&](const ConvergenceTable& t, double limit, double& worst_tail,
                         bool& monotone) {
    std::vector<double> res;
    for (double v : t.psi_values) res.push_back(std::abs(v - limit));
    worst_tail = res.back();
    monotone = true;
    for (std::size_t k = 1; k + 1 < res.size(); ++k)  // from n = 16 on
      if (res[k + 1] > res[k] + 1e-12) monotone = false;
  };
  double rM = 0.0, rP = 0.0;
  bool mM = false, mP = false;
  check_table(tM, comonotone_limit, rM, mM);
  check_table(tP, product_limit, rP, mP);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Outcome out;
  out.pass = rM < 1e-3 && rP < 1e-3 && mM && mP && secs < 60.0;
  out.detail = "upper Frechet residual@256 " + fmt(rM) + (mM ? " monotone" : " NOT monotone") +
               "; independence residual@256 " + fmt(rP) + (mP ? " monotone" : " NOT monotone") +
               " (" + fmt(secs) + " s)";
  return out;
}

// 11. Lipschitz survival bound on 128^d meshes for the three families, L = 1.
Outcome criterion_lipschitz_bound() {
  double worst = 0.0;
  for (int d : {2, 3}) {
    const GridMesh mesh = GridMesh::uniform(BoxDomain::unit_cube(d), 128);
    for (auto S : {SemiCopula::independence(d), SemiCopula::upper_frechet(d),
                   SemiCopula::lower_frechet(d)}) {
      const auto rep = lipschitz_survival_bound(S, mesh);
      worst = std::max(worst, rep.max_ratio);
    }
  }
  Outcome out;
  out.pass = worst <= 1.0 + 1e-9;
  out.detail = "max ratio " + fmt(worst);
  return out;
}

// 12. Round trip: extract_measure o cumulative_grid is the identity on 100
//     seeded atom sets with grid-node positions, exact to 1e-12.
Outcome criterion_round_trip() {
  double worst = 0.0;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> node(1, 7);
  std::normal_distribution<double> weight(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    const GridMesh mesh = GridMesh::uniform(BoxDomain::unit_cube(d), 8);
    std::vector<Atom> atoms;
    const int n = 1 + trial % 5;
    for (int a = 0; a < n; ++a) {
      Point p(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = mesh.axis(i)[static_cast<std::size_t>(node(rng))];
      double w = weight(rng);
      if (w == 0.0) w = 0.5;
      atoms.push_back({p, w});
    }
    const AtomicSignedMeasure m(d, atoms, BoxDomain::unit_cube(d));
    const AtomicSignedMeasure back =
        extract_measure(cumulative_grid(m, mesh, ContinuityTag::RightContinuous));
    worst = std::max(worst, total_variation_distance(m, back));
  }
  Outcome out;
  out.pass = worst < 1e-12;
  out.detail = "100 cases, worst TV gap " + fmt(worst);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"jump-discontinuity counterexample", criterion_jump},
      {"integration-by-parts identity vs Fubini oracle", criterion_ibp_identity},
      {"grounded corollary", criterion_grounded_corollary},
      {"marginal function vs marginal measure mismatch", criterion_marginal_mismatch},
      {"survival identities", criterion_survival_identities},
      {"survival/marginal interchange for grounded functions", criterion_survival_marginal},
      {"variation dichotomy probe", criterion_variation_dichotomy},
      {"Jordan-type decomposition of x^2 - 2x", criterion_decomposition},
      {"transformation formula", criterion_transformation},
      {"extension convergence to the quadrature oracles", criterion_extension},
      {"Lipschitz survival bound", criterion_lipschitz_bound},
      {"extract/cumulative round trip", criterion_round_trip},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %zu: %s — %s\n", out.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), out.detail.c_str());
  }
  if (failures)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures;
}
