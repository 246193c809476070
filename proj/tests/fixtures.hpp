// Library-side views of the raw oracle fixtures, shared between the unit and
// acceptance suites.
#ifndef STIELTJES_TESTS_FIXTURES_HPP
#define STIELTJES_TESTS_FIXTURES_HPP

#include <cmath>

#include "oracles.hpp"
#include "stieltjes/funcspace.hpp"
#include "stieltjes/measures.hpp"

namespace fixtures {

inline stieltjes::TaggedFunction as_tagged(const oracle::GFixture& g,
                                           const stieltjes::BoxDomain& domain) {
  oracle::GFixture copy = g;
  double bound = std::abs(copy.g0);
  for (const auto& [mask, atoms] : copy.components)
    for (const auto& a : atoms) bound += std::abs(a.w);
  const bool grounded = copy.g0 == 0.0 && copy.components.size() == 1 &&
                        copy.components.begin()->first == (1u << copy.dims) - 1u;
  return stieltjes::TaggedFunction(
      domain,
      [copy](std::span<const double> x) {
        return copy.eval(std::vector<double>(x.begin(), x.end()));
      },
      stieltjes::ContinuityTag::LeftContinuous, grounded, bound, "g_fixture");
}

inline stieltjes::TaggedFunction as_tagged(const oracle::HFixture& h,
                                           const stieltjes::BoxDomain& domain) {
  std::vector<stieltjes::WeightedPoint> atoms;
  for (const auto& a : h.atoms) atoms.push_back({a.pos, a.w});
  return stieltjes::right_step(domain, std::move(atoms));
}

// shared mesh resolving every atom coordinate of both fixtures
inline stieltjes::GridMesh fixture_mesh(const oracle::GFixture& g, const oracle::HFixture& h) {
  const int d = g.dims;
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d),
                                        std::vector<double>{0.0, 1.0});
  for (const auto& [mask, atoms] : g.components) {
    std::vector<int> comp_axes;
    for (int i = 0; i < d; ++i)
      if ((mask >> i) & 1u) comp_axes.push_back(i);
    for (const auto& a : atoms)
      for (std::size_t k = 0; k < comp_axes.size(); ++k)
        axes[static_cast<std::size_t>(comp_axes[k])].push_back(a.pos[k]);
  }
  for (const auto& a : h.atoms)
    for (int i = 0; i < d; ++i)
      axes[static_cast<std::size_t>(i)].push_back(a.pos[static_cast<std::size_t>(i)]);
  return stieltjes::GridMesh::from_coordinates(std::move(axes));
}

}  // namespace fixtures

#endif
