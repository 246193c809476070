#include "stieltjes/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stieltjes/parallel.hpp"

namespace stieltjes {

double psi(const TaggedFunction& f, const AtomicSignedMeasure& m) {
  if (f.dims() != m.dims()) throw dimension_error("psi: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < m.atoms().size(); ++k) {
    const Atom& a = m.atoms()[k];
    const double v = f(a.position);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "psi: integrand is non-finite at atom " << k << " (";
      for (std::size_t i = 0; i < a.position.size(); ++i) os << (i ? "," : "") << a.position[i];
      os << ")";
      throw evaluation_error(os.str());
    }
    s += v * a.weight;
  }
  return s;
}

namespace {

// atom position of a cell under the extraction convention of `tag`
void cell_atom_position(const GridMesh& mesh, std::span<const std::size_t> cell,
                        ContinuityTag tag, Point& out) {
  const int d = mesh.dims();
  for (int i = 0; i < d; ++i) {
    const auto& ax = mesh.axis(i);
    const std::size_t k = cell[static_cast<std::size_t>(i)];
    switch (tag) {
      case ContinuityTag::RightContinuous: out[static_cast<std::size_t>(i)] = ax[k + 1]; break;
      case ContinuityTag::LeftContinuous: out[static_cast<std::size_t>(i)] = ax[k]; break;
      default: out[static_cast<std::size_t>(i)] = 0.5 * (ax[k] + ax[k + 1]); break;
    }
  }
}

// streaming psi(f_I, extract_measure(g_I on sub-mesh)) without materializing atoms
double marginal_term(const TaggedFunction& g, const TaggedFunction& f, SubsetIndex I,
                     const GridMesh& mesh, const LimitScheme& scheme) {
  GridMesh sub = I == SubsetIndex::full(mesh.dims()) ? mesh : mesh.restrict_to(I);
  TaggedFunction g_I = lower_marginal(g, I, scheme);
  TaggedFunction f_I = lower_marginal(f, I, scheme);
  GridField field = [&] {
    try {
      return GridField::sample(g_I, sub);
    } catch (const limit_divergence_error& e) {
      throw marginal_divergence_error(
          "pi: marginal " + I.to_string() + " of the integrator is not extractable: " + e.what(),
          e.residual());
    }
  }();
  const int d = sub.dims();
  std::vector<std::size_t> sizes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) sizes[static_cast<std::size_t>(i)] = sub.size(i) - 1;
  return chunked_sum(sub.cell_count(), [&](std::size_t c) {
    std::vector<std::size_t> cell(static_cast<std::size_t>(d));
    std::size_t rest = c;
    for (int i = d - 1; i >= 0; --i) {
      cell[static_cast<std::size_t>(i)] = rest % sizes[static_cast<std::size_t>(i)];
      rest /= sizes[static_cast<std::size_t>(i)];
    }
    const double w = field.cell_delta(cell);
    if (w == 0.0) return 0.0;
    Point pos(static_cast<std::size_t>(d));
    cell_atom_position(sub, cell, g.tag(), pos);
    const double v = f_I(pos);
    if (!std::isfinite(v))
      throw evaluation_error("pi: integrand marginal " + I.to_string() +
                             " is non-finite at an extracted atom");
    return v * w;
  });
}

}  // namespace

IbpBreakdown pi(const TaggedFunction& g, const TaggedFunction& f, const GridMesh& mesh,
                const LimitScheme& scheme) {
  if (g.dims() != f.dims() || g.dims() != mesh.dims())
    throw dimension_error("pi: dimension mismatch between integrator, integrand, and mesh");
  if (g.tag() == ContinuityTag::Untagged)
    throw tag_required_error("pi: the integrator needs a continuity tag");

  IbpBreakdown out;
  const int d = g.dims();
  const SubsetIndex full = SubsetIndex::full(d);
  const double f_empty = corner_value(f, CornerSide::Lower, scheme);
  const double g_empty = corner_value(g, CornerSide::Lower, scheme);

  for (SubsetIndex I : enumerate_subsets(d, /*include_empty=*/false)) {
    // a grounded integrator has identically vanishing proper lower marginals
    const double term = (g.declared_grounded() && I != full)
                            ? 0.0
                            : marginal_term(g, f, I, mesh, scheme);
    out.terms[I.bits()] = term;
  }
  out.corner_term = f_empty * g_empty;
  for (const auto& [bits, term] : out.terms) out.total += term;
  out.total += out.corner_term;
  return out;
}

IbpReport ibp_check(const TaggedFunction& g, const TaggedFunction& h, const GridMesh& mesh,
                    const LimitScheme& scheme) {
  if (g.tag() == ContinuityTag::Untagged || h.tag() == ContinuityTag::Untagged)
    throw hypothesis_error("ibp_check: both functions need continuity tags");
  if (!h.declared_grounded())
    throw hypothesis_error("ibp_check: h must be declared grounded");
  if (!h.declared_bound())
    throw hypothesis_error("ibp_check: h must be declared bounded");

  IbpReport rep;
  const bool opposite = (is_left(g.tag()) && is_right(h.tag())) ||
                        (is_right(g.tag()) && is_left(h.tag()));
  rep.hypothesis_violated = !opposite;

  const AtomicSignedMeasure nu_h = extract_measure(GridField::sample(h, mesh));
  rep.lhs = psi(g, nu_h);
  rep.rhs_breakdown = pi(g, survival(h, scheme), mesh, scheme);
  rep.rhs = rep.rhs_breakdown.total;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

std::function<double(double)> generalized_inverse(const DistributionFunction1D& F) {
  DistributionFunction1D copy = F;
  return [copy](double t) { return copy.inverse(t); };
}

GridMesh transform_image_mesh(const GridMesh& mesh, const std::vector<DistributionFunction1D>& F) {
  if (static_cast<std::size_t>(mesh.dims()) != F.size())
    throw dimension_error("transform_image_mesh: one distribution per axis required");
  std::vector<std::vector<double>> axes(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto& ax = axes[i];
    ax.push_back(0.0);
    ax.push_back(1.0);
    for (double x : mesh.axis(static_cast<int>(i))) ax.push_back(F[i](x));
    // cumulative-mass levels: where the generalized inverse jumps
    double run = 0.0;
    for (const auto& [pt, w] : F[i].jumps()) {
      run += w;
      ax.push_back(run);
    }
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    std::erase_if(ax, [](double v) { return v < 0.0 || v > 1.0; });
  }
  return GridMesh(std::move(axes));
}

TransformReport transform_check(const TaggedFunction& g,
                                const std::vector<DistributionFunction1D>& F,
                                const TaggedFunction& h, const GridMesh& mesh,
                                const LimitScheme& scheme) {
  const int d = g.dims();
  if (static_cast<std::size_t>(d) != F.size())
    throw dimension_error("transform_check: one distribution per axis required");
  if (h.dims() != d) throw dimension_error("transform_check: h dimension mismatch");
  if (!is_left(g.tag()))
    throw hypothesis_error("transform_check: g must be left-tagged (or continuous)");

  // g o (F_1^[-1], ..., F_d^[-1]) on the unit cube, left-continuous
  TaggedFunction base_g = g;
  std::vector<DistributionFunction1D> dists = F;
  auto composed_eval = [base_g, dists, d](std::span<const double> u) {
    Point x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      x[static_cast<std::size_t>(i)] = dists[static_cast<std::size_t>(i)].inverse(u[static_cast<std::size_t>(i)]);
    return base_g(x);
  };
  TaggedFunction g_composed(BoxDomain::unit_cube(d), composed_eval,
                            ContinuityTag::LeftContinuous, false, g.declared_bound(),
                            g.family() + "_pullback");

  // h o (F_1, ..., F_d) on g's domain; right-continuous when h is continuous
  TaggedFunction base_h = h;
  auto pushed_eval = [base_h, dists, d](std::span<const double> x) {
    Point u(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      u[static_cast<std::size_t>(i)] = dists[static_cast<std::size_t>(i)](x[static_cast<std::size_t>(i)]);
    return base_h(u);
  };
  const ContinuityTag pushed_tag = h.tag() == ContinuityTag::Continuous
                                       ? ContinuityTag::RightContinuous
                                       : ContinuityTag::Untagged;
  TaggedFunction h_pushed(g.domain(), pushed_eval, pushed_tag, false, h.declared_bound(),
                          h.family() + "_pushforward");

  TransformReport rep;
  rep.lhs_breakdown = pi(g_composed, h, transform_image_mesh(mesh, F), scheme);
  rep.rhs_breakdown = pi(g, h_pushed, mesh, scheme);
  rep.lhs = rep.lhs_breakdown.total;
  rep.rhs = rep.rhs_breakdown.total;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace stieltjes
