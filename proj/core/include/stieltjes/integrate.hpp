#ifndef STIELTJES_INTEGRATE_HPP
#define STIELTJES_INTEGRATE_HPP

#include <functional>
#include <map>
#include <vector>

#include "stieltjes/measures.hpp"

namespace stieltjes {

/// Integral operator psi_g(f) = int f d(nu_g) for an atomic measure:
/// the weighted sum of f over the atoms. Evaluation at shared discontinuity
/// points follows the integrand's construction (left steps exclude their own
/// atom's mass, right steps include it).
double psi(const TaggedFunction& f, const AtomicSignedMeasure& m);

/// Per-subset breakdown of the integration by parts operator
/// pi_g(f) = sum over nonempty I of int f_I d(nu_{g_I}) + f_empty * g_empty.
/// The total is accumulated in ascending bitmask order, corner term last.
struct IbpBreakdown {
  std::map<std::uint32_t, double> terms;
  double corner_term = 0.0;
  double total = 0.0;
};

/// Integration by parts operator on a shared mesh: every marginal measure
/// nu_{g_I} is extracted on the restriction of the same mesh, and f_I is
/// evaluated at the extracted atom positions. For declared-grounded g the
/// proper-subset terms vanish identically and are skipped.
IbpBreakdown pi(const TaggedFunction& g, const TaggedFunction& f, const GridMesh& mesh,
                const LimitScheme& scheme = {});

/// Both sides of psi_h(g) = pi_g(survival(h)). Runs even when the tag
/// hypothesis (one left, one right) is violated, flagging the report.
struct IbpReport {
  double lhs = 0.0;       // psi_h(g)
  double rhs = 0.0;       // pi_g(h_bar)
  double residual = 0.0;
  bool hypothesis_violated = false;
  IbpBreakdown rhs_breakdown;
};
IbpReport ibp_check(const TaggedFunction& g, const TaggedFunction& h, const GridMesh& mesh,
                    const LimitScheme& scheme = {});

/// Generalized inverse F^[-1](t) = inf{x : F(x) >= t} as an evaluable map,
/// left-continuous, with inf over the empty set mapped to the upper bound.
std::function<double(double)> generalized_inverse(const DistributionFunction1D& F);

/// Both sides of the transformation formula
/// pi_{g o (F_1^[-1],...,F_d^[-1])}(h) = pi_g(h o (F_1,...,F_d)).
/// g must be left-tagged (or continuous); h lives on [0,1]^d.
struct TransformReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  IbpBreakdown lhs_breakdown;
  IbpBreakdown rhs_breakdown;
};
TransformReport transform_check(const TaggedFunction& g,
                                const std::vector<DistributionFunction1D>& F,
                                const TaggedFunction& h, const GridMesh& mesh,
                                const LimitScheme& scheme = {});

/// Mesh on [0,1]^d resolving the image of `mesh` under F together with the
/// cumulative-mass levels where the generalized inverses jump.
GridMesh transform_image_mesh(const GridMesh& mesh, const std::vector<DistributionFunction1D>& F);

}  // namespace stieltjes

#endif
