#ifndef STIELTJES_VARIATION_HPP
#define STIELTJES_VARIATION_HPP

#include <map>
#include <string>
#include <vector>

#include "stieltjes/measures.hpp"

namespace stieltjes {

/// Anchor of the marginal slices: Lower follows the anchored-at-a definition
/// (lower marginals); Upper is the cross-check anchored at b.
enum class VariationAnchor { Lower, Upper };

/// Sum of |Delta| over the grid cells of the partition restricted to I, the
/// marginal being the grid slice pinned at the anchor. Over grid-aligned
/// partitions this is exact: refinement never decreases the sum.
double vitali_variation(const GridField& f, SubsetIndex I,
                        VariationAnchor anchor = VariationAnchor::Lower);

struct VariationReport {
  std::map<std::uint32_t, double> per_subset;  // bitmask -> Vitali value
  double hk_total = 0.0;
  VariationAnchor anchor = VariationAnchor::Lower;
  std::string mesh_descriptor;
};

/// Hardy-Krause variation: per-subset Vitali values of the anchored marginals
/// plus their sum over all nonempty subsets.
VariationReport hk_variation(const GridField& f, VariationAnchor anchor = VariationAnchor::Lower);

/// HK value sampled on uniform n-meshes for each level; the finite-sample
/// probe of the bounded-variation dichotomy. The domain must be bounded, or an
/// explicit truncation hull must be supplied.
std::vector<std::pair<int, double>> variation_profile(const TaggedFunction& f,
                                                      const std::vector<int>& levels,
                                                      VariationAnchor anchor = VariationAnchor::Lower);
std::vector<std::pair<int, double>> variation_profile(const TaggedFunction& f,
                                                      const std::vector<int>& levels,
                                                      const Box& truncation,
                                                      VariationAnchor anchor = VariationAnchor::Lower);

}  // namespace stieltjes

#endif
