#include "stieltjes/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stieltjes {

std::string to_string(ContinuityTag t) {
  switch (t) {
    case ContinuityTag::LeftContinuous: return "left";
    case ContinuityTag::RightContinuous: return "right";
    case ContinuityTag::Continuous: return "continuous";
    default: return "untagged";
  }
}

ContinuityTag tag_from_string(const std::string& s) {
  if (s == "left") return ContinuityTag::LeftContinuous;
  if (s == "right") return ContinuityTag::RightContinuous;
  if (s == "continuous") return ContinuityTag::Continuous;
  if (s == "untagged" || s.empty()) return ContinuityTag::Untagged;
  throw parse_error("unknown continuity tag: " + s);
}

TaggedFunction::TaggedFunction(BoxDomain domain, Evaluator evaluator, ContinuityTag tag,
                               bool grounded, std::optional<double> bound, std::string family)
    : domain_(std::move(domain)),
      eval_(std::move(evaluator)),
      tag_(tag),
      grounded_(grounded),
      bound_(bound),
      family_(std::move(family)) {
  if (!eval_) throw error("TaggedFunction: evaluator must be callable");
}

TaggedFunction TaggedFunction::with_tag(ContinuityTag t) const {
  TaggedFunction out = *this;
  out.tag_ = t;
  return out;
}

TaggedFunction TaggedFunction::with_grounded(bool g) const {
  TaggedFunction out = *this;
  out.grounded_ = g;
  return out;
}

TaggedFunction TaggedFunction::with_bound(std::optional<double> b) const {
  TaggedFunction out = *this;
  out.bound_ = b;
  return out;
}

// ---------------------------------------------------------------------------
// Iterated one-sided limits
// ---------------------------------------------------------------------------

namespace {

struct LimitAxis {
  int axis = 0;
  bool toward_lower = true;
  double endpoint = 0.0;     // the approached endpoint (finite case)
  bool infinite = false;
  double start = 1e-2;       // first offset (finite) or first magnitude (infinite)
};

double offset_coordinate(const LimitAxis& la, int step) {
  if (la.infinite)
    return la.toward_lower ? -la.start * std::ldexp(1.0, step)
                           : la.start * std::ldexp(1.0, step);
  return la.toward_lower ? la.endpoint + la.start * std::ldexp(1.0, -step)
                         : la.endpoint - la.start * std::ldexp(1.0, -step);
}

class IteratedLimit {
 public:
  IteratedLimit(const TaggedFunction& f, const LimitScheme& scheme)
      : f_(f), scheme_(scheme) {}

  // Nested limit over limit_axes (outermost first) with the remaining
  // coordinates of buf already fixed.
  double run(Point& buf, std::span<const LimitAxis> limit_axes) const {
    if (limit_axes.empty()) return f_(buf);
    return nested(buf, limit_axes, 0);
  }

 private:
  double nested(Point& buf, std::span<const LimitAxis> axes, std::size_t k) const {
    if (k == axes.size()) return f_(buf);
    const LimitAxis& la = axes[k];
    double prev = 0.0;
    bool have_prev = false;
    double value = 0.0;
    for (int s = 0; s <= scheme_.max_halvings; ++s) {
      buf[static_cast<std::size_t>(la.axis)] = offset_coordinate(la, s);
      value = nested(buf, axes, k + 1);
      if (have_prev && std::abs(value - prev) < scheme_.stabilization_tol) return value;
      prev = value;
      have_prev = true;
    }
    throw marginal_divergence_error(
        "iterated limit failed to stabilize on axis " + std::to_string(la.axis + 1),
        std::abs(value - prev));
  }

  const TaggedFunction& f_;
  const LimitScheme& scheme_;
};

LimitAxis make_limit_axis(const AxisBounds& b, int axis, bool toward_lower,
                          const LimitScheme& scheme) {
  LimitAxis la;
  la.axis = axis;
  la.toward_lower = toward_lower;
  const double endpoint = toward_lower ? b.lower : b.upper;
  if (std::isinf(endpoint)) {
    la.infinite = true;
    la.start = std::max(scheme.infinite_anchor, 1e-300);
    // keep the first probe inside the domain
    if (!toward_lower && std::isfinite(b.lower)) la.start = std::max(la.start, b.lower + 1.0);
    if (toward_lower && std::isfinite(b.upper)) la.start = std::max(la.start, -b.upper + 1.0);
  } else {
    la.endpoint = endpoint;
    la.start = scheme.initial_offset;
    if (std::isfinite(b.lower) && std::isfinite(b.upper))
      la.start = std::min(la.start, (b.upper - b.lower) / 4.0);
  }
  return la;
}

// True when the endpoint may be evaluated directly instead of approached.
bool direct_endpoint_ok(const AxisBounds& b, bool toward_lower, ContinuityTag tag) {
  if (toward_lower)
    return b.lower_closed && std::isfinite(b.lower) &&
           (tag == ContinuityTag::Continuous || tag == ContinuityTag::RightContinuous);
  return b.upper_closed && std::isfinite(b.upper) &&
         (tag == ContinuityTag::Continuous || tag == ContinuityTag::LeftContinuous);
}

// Evaluate the I-marginal of f at x_I (coordinates listed in ascending axis order).
double marginal_value(const TaggedFunction& f, SubsetIndex I, bool toward_lower,
                      std::span<const double> x_I, const LimitScheme& scheme) {
  const int d = f.dims();
  Point buf(static_cast<std::size_t>(d), 0.0);
  std::vector<LimitAxis> limit_axes;
  std::size_t xi = 0;
  for (int i = 0; i < d; ++i) {
    if (I.contains(i)) {
      buf[static_cast<std::size_t>(i)] = x_I[xi++];
      continue;
    }
    const AxisBounds& b = f.domain().axis(i);
    if (direct_endpoint_ok(b, toward_lower, f.tag()))
      buf[static_cast<std::size_t>(i)] = toward_lower ? b.lower : b.upper;
    else
      limit_axes.push_back(make_limit_axis(b, i, toward_lower, scheme));
  }

  IteratedLimit lim(f, scheme);
  const double forward = lim.run(buf, limit_axes);
  if (scheme.check_reverse_order && limit_axes.size() > 1) {
    std::vector<LimitAxis> rev(limit_axes.rbegin(), limit_axes.rend());
    Point buf2 = buf;
    // re-fix kept coordinates (buf was clobbered by the forward pass)
    std::size_t xj = 0;
    for (int i = 0; i < d; ++i)
      if (I.contains(i)) buf2[static_cast<std::size_t>(i)] = x_I[xj++];
    const double backward = lim.run(buf2, rev);
    if (std::abs(forward - backward) > scheme.order_tol)
      throw marginal_divergence_error(
          "iterated limit is order sensitive (forward/reverse differ by " +
              std::to_string(std::abs(forward - backward)) + ")",
          std::abs(forward - backward));
  }
  return forward;
}

std::optional<double> scaled_bound(const TaggedFunction& f, double factor) {
  if (!f.declared_bound()) return std::nullopt;
  return *f.declared_bound() * factor;
}

}  // namespace

TaggedFunction lower_marginal(const TaggedFunction& f, SubsetIndex I, const LimitScheme& scheme) {
  if (I.empty()) throw invalid_subset_error("lower_marginal: empty subset (use corner_value)");
  if (!I.is_subset_of(SubsetIndex::full(f.dims())))
    throw invalid_subset_error("lower_marginal: subset exceeds dimension");
  if (I == SubsetIndex::full(f.dims())) return f;
  BoxDomain sub = f.domain().restrict_to(I);
  TaggedFunction base = f;
  LimitScheme sc = scheme;
  auto eval = [base, I, sc](std::span<const double> x) {
    return marginal_value(base, I, /*toward_lower=*/true, x, sc);
  };
  // A grounded function has identically vanishing proper lower marginals.
  return TaggedFunction(std::move(sub), std::move(eval), f.tag(), f.declared_grounded(),
                        f.declared_bound(), f.family() + "_lower" + I.to_string());
}

TaggedFunction upper_marginal(const TaggedFunction& f, SubsetIndex I, const LimitScheme& scheme) {
  if (I.empty()) throw invalid_subset_error("upper_marginal: empty subset (use corner_value)");
  if (!I.is_subset_of(SubsetIndex::full(f.dims())))
    throw invalid_subset_error("upper_marginal: subset exceeds dimension");
  if (I == SubsetIndex::full(f.dims())) return f;
  BoxDomain sub = f.domain().restrict_to(I);
  TaggedFunction base = f;
  LimitScheme sc = scheme;
  auto eval = [base, I, sc](std::span<const double> x) {
    return marginal_value(base, I, /*toward_lower=*/false, x, sc);
  };
  return TaggedFunction(std::move(sub), std::move(eval), f.tag(), false, f.declared_bound(),
                        f.family() + "_upper" + I.to_string());
}

double corner_value(const TaggedFunction& f, CornerSide side, const LimitScheme& scheme) {
  try {
    return marginal_value(f, SubsetIndex(), side == CornerSide::Lower, {}, scheme);
  } catch (const marginal_divergence_error& e) {
    throw corner_divergence_error(std::string("corner limit diverged: ") + e.what(),
                                  e.residual());
  }
}

TaggedFunction survival(const TaggedFunction& f, const LimitScheme& scheme) {
  const int d = f.dims();
  const double f_upper_corner = corner_value(f, CornerSide::Upper, scheme);
  TaggedFunction base = f;
  LimitScheme sc = scheme;
  auto eval = [base, d, f_upper_corner, sc](std::span<const double> x) {
    double sum = f_upper_corner;  // I = empty, sign +1
    Point x_I;
    x_I.reserve(static_cast<std::size_t>(d));
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
      SubsetIndex I(m);
      x_I.clear();
      for (int i = 0; i < d; ++i)
        if (I.contains(i)) x_I.push_back(x[static_cast<std::size_t>(i)]);
      const double term = marginal_value(base, I, /*toward_lower=*/false, x_I, sc);
      sum += (I.count() % 2 == 0) ? term : -term;
    }
    return sum;
  };
  return TaggedFunction(f.domain(), std::move(eval), f.tag(), false,
                        scaled_bound(f, std::ldexp(1.0, d)),
                        "survival(" + f.family() + ")");
}

TaggedFunction grounded_core(const TaggedFunction& f, const LimitScheme& scheme) {
  const int d = f.dims();
  if (d == 1) {
    // the proper-subset sum is just the I = empty term
    const double f0 = corner_value(f, CornerSide::Lower, scheme);
    TaggedFunction base = f;
    auto eval = [base, f0](std::span<const double> x) { return base(x) - f0; };
    return TaggedFunction(f.domain(), std::move(eval), f.tag(), true, std::nullopt,
                          "grounded_core(" + f.family() + ")");
  }
  const double f_lower_corner = corner_value(f, CornerSide::Lower, scheme);
  TaggedFunction base = f;
  LimitScheme sc = scheme;
  auto eval = [base, d, f_lower_corner, sc](std::span<const double> x) {
    double sum = base(x);
    // I = empty contributes (-1)^{d-1} * f_empty
    sum -= ((d - 1) % 2 == 0 ? 1.0 : -1.0) * f_lower_corner;
    Point x_I;
    x_I.reserve(static_cast<std::size_t>(d));
    const std::uint32_t full = (1u << d) - 1u;
    for (std::uint32_t m = 1; m < full; ++m) {
      SubsetIndex I(m);
      x_I.clear();
      for (int i = 0; i < d; ++i)
        if (I.contains(i)) x_I.push_back(x[static_cast<std::size_t>(i)]);
      const double term = marginal_value(base, I, /*toward_lower=*/true, x_I, sc);
      const int sign_exp = d - I.count() - 1;
      sum -= (sign_exp % 2 == 0 ? 1.0 : -1.0) * term;
    }
    return sum;
  };
  return TaggedFunction(f.domain(), std::move(eval), f.tag(), true, std::nullopt,
                        "grounded_core(" + f.family() + ")");
}

GroundednessProbe probe_groundedness(const TaggedFunction& f, const GridMesh& mesh, double tol,
                                     const LimitScheme& scheme) {
  GroundednessProbe probe;
  const int d = f.dims();
  if (mesh.dims() != d) throw dimension_error("probe_groundedness: mesh dimension mismatch");
  const int final_halvings = 20;
  Point buf(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const AxisBounds& b = f.domain().axis(j);
    const LimitAxis la = make_limit_axis(b, j, /*toward_lower=*/true, scheme);
    const double slice_coord = offset_coordinate(la, final_halvings);
    // sweep all nodes of the remaining axes
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    bool done = false;
    while (!done) {
      for (int i = 0; i < d; ++i)
        buf[static_cast<std::size_t>(i)] =
            (i == j) ? slice_coord : mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
      const double v = std::abs(f(buf));
      if (v > probe.worst_value) {
        probe.worst_value = v;
        probe.worst_axis = j;
      }
      done = true;
      for (int i = d - 1; i >= 0; --i) {
        if (i == j) continue;
        auto& k = idx[static_cast<std::size_t>(i)];
        if (++k < mesh.size(i)) {
          done = false;
          break;
        }
        k = 0;
      }
    }
  }
  probe.grounded = probe.worst_value < tol;
  return probe;
}

// ---------------------------------------------------------------------------
// DistributionFunction1D
// ---------------------------------------------------------------------------

DistributionFunction1D DistributionFunction1D::from_jumps(
    AxisBounds axis, std::vector<std::pair<double, double>> jumps) {
  DistributionFunction1D F;
  F.axis_ = axis;
  std::sort(jumps.begin(), jumps.end());
  // merge coincident support points
  std::vector<std::pair<double, double>> merged;
  for (const auto& [x, w] : jumps) {
    if (w <= 0.0) throw error("DistributionFunction1D: jump masses must be positive");
    if (!(x > axis.lower && x < axis.upper))
      throw error("DistributionFunction1D: support points must lie strictly inside the axis");
    if (!merged.empty() && merged.back().first == x)
      merged.back().second += w;
    else
      merged.emplace_back(x, w);
  }
  if (merged.empty()) throw error("DistributionFunction1D: empty jump list");
  double total = 0.0;
  F.cumulative_.reserve(merged.size());
  for (const auto& [x, w] : merged) {
    total += w;
    F.cumulative_.push_back(total);
  }
  if (total > 1.0 + 1e-12) throw error("DistributionFunction1D: jump masses sum above 1");
  F.jumps_ = std::move(merged);
  return F;
}

DistributionFunction1D DistributionFunction1D::from_function(AxisBounds axis,
                                                             std::function<double(double)> f) {
  DistributionFunction1D F;
  F.axis_ = axis;
  F.fn_ = std::move(f);
  if (!F.fn_) throw error("DistributionFunction1D: evaluator must be callable");
  return F;
}

double DistributionFunction1D::operator()(double x) const {
  if (!jumps_.empty()) {
    // mass of support points <= x
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), x,
                               [](double v, const auto& j) { return v < j.first; });
    if (it == jumps_.begin()) return 0.0;
    return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
  }
  return std::clamp(fn_(x), 0.0, 1.0);
}

double DistributionFunction1D::inverse(double t) const {
  if (t <= 0.0) return axis_.lower;
  if (!jumps_.empty()) {
    const double total = cumulative_.back();
    if (t > total + 1e-12) return axis_.upper;  // inf over the empty set
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), t - 1e-12);
    if (it == cumulative_.end()) return axis_.upper;
    return jumps_[static_cast<std::size_t>(it - cumulative_.begin())].first;
  }
  // monotone bisection; expand the bracket when the axis is unbounded
  double lo = axis_.lower, hi = axis_.upper;
  if (std::isinf(lo)) {
    lo = -1.0;
    while ((*this)(lo) >= t && lo > -1e300) lo *= 2.0;
  }
  if (std::isinf(hi)) {
    hi = 1.0;
    while ((*this)(hi) < t && hi < 1e300) hi *= 2.0;
    if ((*this)(hi) < t) return axis_.upper;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

TaggedFunction DistributionFunction1D::as_function() const {
  DistributionFunction1D F = *this;
  auto eval = [F](std::span<const double> x) { return F(x[0]); };
  return TaggedFunction(BoxDomain({axis_}), std::move(eval), ContinuityTag::RightContinuous,
                        false, 1.0, "distribution");
}

// ---------------------------------------------------------------------------
// SemiCopula
// ---------------------------------------------------------------------------

SemiCopula SemiCopula::independence(int dims) {
  return SemiCopula(dims, SemiCopulaKind::Independence, 1.0, [](std::span<const double> u) {
    double p = 1.0;
    for (double v : u) p *= v;
    return p;
  });
}

SemiCopula SemiCopula::upper_frechet(int dims) {
  return SemiCopula(dims, SemiCopulaKind::UpperFrechet, 1.0, [](std::span<const double> u) {
    return *std::min_element(u.begin(), u.end());
  });
}

SemiCopula SemiCopula::lower_frechet(int dims) {
  const double shift = static_cast<double>(dims) - 1.0;
  return SemiCopula(dims, SemiCopulaKind::LowerFrechet, 1.0, [shift](std::span<const double> u) {
    double s = 0.0;
    for (double v : u) s += v;
    return std::max(s - shift, 0.0);
  });
}

SemiCopula SemiCopula::convex_combination(SemiCopula a, SemiCopula b, double weight_a) {
  if (a.dims() != b.dims()) throw dimension_error("convex_combination: dimension mismatch");
  if (weight_a < 0.0 || weight_a > 1.0) throw error("convex_combination: weight outside [0,1]");
  const double L = weight_a * a.lipschitz() + (1.0 - weight_a) * b.lipschitz();
  auto ea = a.eval_;
  auto eb = b.eval_;
  return SemiCopula(a.dims(), SemiCopulaKind::ConvexCombination, L,
                    [ea, eb, weight_a](std::span<const double> u) {
                      return weight_a * ea(u) + (1.0 - weight_a) * eb(u);
                    });
}

SemiCopula SemiCopula::user_defined(int dims, TaggedFunction::Evaluator eval, double lipschitz) {
  if (!eval) throw error("user_defined semi-copula: evaluator must be callable");
  return SemiCopula(dims, SemiCopulaKind::UserDefined, lipschitz, std::move(eval));
}

TaggedFunction SemiCopula::as_function() const {
  auto e = eval_;
  std::string name;
  switch (kind_) {
    case SemiCopulaKind::Independence: name = "independence"; break;
    case SemiCopulaKind::UpperFrechet: name = "upper_frechet"; break;
    case SemiCopulaKind::LowerFrechet: name = "lower_frechet"; break;
    case SemiCopulaKind::ConvexCombination: name = "convex_combination"; break;
    default: name = "semicopula"; break;
  }
  return TaggedFunction(BoxDomain::unit_cube(dims_),
                        [e](std::span<const double> u) { return e(u); },
                        ContinuityTag::Continuous, true, 1.0, name);
}

SemiCopulaReport check_semicopula(const SemiCopula& S, const GridMesh& mesh) {
  if (mesh.dims() != S.dims()) throw dimension_error("check_semicopula: dimension mismatch");
  SemiCopulaReport rep;
  rep.uniform_marginals = true;
  rep.increasing = true;
  rep.grounded = true;
  const int d = S.dims();
  const double tol = 1e-12;

  // axiom (i): S(u) = u_i when all other coordinates are 1
  Point p(static_cast<std::size_t>(d), 1.0);
  for (int i = 0; i < d; ++i) {
    for (double u : mesh.axis(i)) {
      std::fill(p.begin(), p.end(), 1.0);
      p[static_cast<std::size_t>(i)] = u;
      const double err = std::abs(S(p) - u);
      rep.worst_marginal_error = std::max(rep.worst_marginal_error, err);
      if (err > tol) rep.uniform_marginals = false;
    }
  }

  // axiom (ii) + Lipschitz estimate + groundedness, one sweep over grid nodes
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  Point q(static_cast<std::size_t>(d));
  bool done = false;
  while (!done) {
    for (int i = 0; i < d; ++i) q[static_cast<std::size_t>(i)] = mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
    const double v = S(q);
    bool on_floor = false;
    for (int i = 0; i < d; ++i)
      if (idx[static_cast<std::size_t>(i)] == 0 && mesh.axis(i).front() == 0.0) on_floor = true;
    if (on_floor && std::abs(v) > tol) rep.grounded = false;
    for (int i = 0; i < d; ++i) {
      const auto k = idx[static_cast<std::size_t>(i)];
      if (k + 1 >= mesh.size(i)) continue;
      const double step = mesh.axis(i)[k + 1] - mesh.axis(i)[k];
      Point r = q;
      r[static_cast<std::size_t>(i)] = mesh.axis(i)[k + 1];
      const double dv = S(r) - v;
      if (dv < -tol) rep.increasing = false;
      rep.lipschitz_estimate = std::max(rep.lipschitz_estimate, std::abs(dv) / step);
    }
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
  return rep;
}

// ---------------------------------------------------------------------------
// Step-function factories
// ---------------------------------------------------------------------------

namespace {

bool atoms_strictly_above_floor(const BoxDomain& domain, const std::vector<WeightedPoint>& atoms) {
  for (const auto& a : atoms)
    for (int i = 0; i < domain.dims(); ++i)
      if (!(a.position[static_cast<std::size_t>(i)] > domain.axis(i).lower)) return false;
  return true;
}

double step_bound(const std::vector<WeightedPoint>& atoms, double constant) {
  double b = std::abs(constant);
  for (const auto& a : atoms) b += std::abs(a.weight);
  return b;
}

}  // namespace

TaggedFunction left_step(BoxDomain domain, std::vector<WeightedPoint> atoms, double constant) {
  const int d = domain.dims();
  for (const auto& a : atoms)
    if (static_cast<int>(a.position.size()) != d)
      throw dimension_error("left_step: atom dimension mismatch");
  const bool grounded = constant == 0.0 && atoms_strictly_above_floor(domain, atoms);
  const double bound = step_bound(atoms, constant);
  auto eval = [atoms, constant, d](std::span<const double> x) {
    double v = constant;
    for (const auto& a : atoms) {
      bool in = true;
      for (int i = 0; i < d && in; ++i)
        in = a.position[static_cast<std::size_t>(i)] < x[static_cast<std::size_t>(i)];
      if (in) v += a.weight;
    }
    return v;
  };
  return TaggedFunction(std::move(domain), std::move(eval), ContinuityTag::LeftContinuous,
                        grounded, bound, "left_step");
}

TaggedFunction right_step(BoxDomain domain, std::vector<WeightedPoint> atoms, double constant) {
  const int d = domain.dims();
  for (const auto& a : atoms)
    if (static_cast<int>(a.position.size()) != d)
      throw dimension_error("right_step: atom dimension mismatch");
  const bool grounded = constant == 0.0 && atoms_strictly_above_floor(domain, atoms);
  const double bound = step_bound(atoms, constant);
  auto eval = [atoms, constant, d](std::span<const double> x) {
    double v = constant;
    for (const auto& a : atoms) {
      bool in = true;
      for (int i = 0; i < d && in; ++i)
        in = a.position[static_cast<std::size_t>(i)] <= x[static_cast<std::size_t>(i)];
      if (in) v += a.weight;
    }
    return v;
  };
  return TaggedFunction(std::move(domain), std::move(eval), ContinuityTag::RightContinuous,
                        grounded, bound, "right_step");
}

}  // namespace stieltjes
