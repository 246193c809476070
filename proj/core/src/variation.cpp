#include "stieltjes/variation.hpp"

#include <cmath>

#include "stieltjes/parallel.hpp"

namespace stieltjes {

double vitali_variation(const GridField& f, SubsetIndex I, VariationAnchor anchor) {
  if (I.empty()) throw invalid_subset_error("vitali_variation: empty subset");
  const GridField sub = f.slice(I, anchor == VariationAnchor::Lower);
  const GridMesh& mesh = sub.mesh();
  const int d = mesh.dims();
  std::vector<std::size_t> sizes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) sizes[static_cast<std::size_t>(i)] = mesh.size(i) - 1;

  const std::size_t ncells = mesh.cell_count();
  return chunked_sum(ncells, [&](std::size_t c) {
    std::vector<std::size_t> cell(static_cast<std::size_t>(d));
    std::size_t rest = c;
    for (int i = d - 1; i >= 0; --i) {
      cell[static_cast<std::size_t>(i)] = rest % sizes[static_cast<std::size_t>(i)];
      rest /= sizes[static_cast<std::size_t>(i)];
    }
    return std::abs(sub.cell_delta(cell));
  });
}

VariationReport hk_variation(const GridField& f, VariationAnchor anchor) {
  VariationReport rep;
  rep.anchor = anchor;
  rep.mesh_descriptor = f.mesh().descriptor();
  for (SubsetIndex I : enumerate_subsets(f.mesh().dims(), /*include_empty=*/false)) {
    const double v = vitali_variation(f, I, anchor);
    rep.per_subset[I.bits()] = v;
    rep.hk_total += v;
  }
  return rep;
}

std::vector<std::pair<int, double>> variation_profile(const TaggedFunction& f,
                                                      const std::vector<int>& levels,
                                                      VariationAnchor anchor) {
  if (!f.domain().bounded())
    throw error("variation_profile: unbounded domain; supply a truncation hull");
  Box hull;
  for (int i = 0; i < f.dims(); ++i) {
    hull.lower.push_back(f.domain().axis(i).lower);
    hull.upper.push_back(f.domain().axis(i).upper);
  }
  return variation_profile(f, levels, hull, anchor);
}

std::vector<std::pair<int, double>> variation_profile(const TaggedFunction& f,
                                                      const std::vector<int>& levels,
                                                      const Box& truncation,
                                                      VariationAnchor anchor) {
  for (std::size_t k = 0; k + 1 < levels.size(); ++k)
    if (!(levels[k] < levels[k + 1])) throw error("variation_profile: levels must increase");
  std::vector<std::pair<int, double>> out;
  out.reserve(levels.size());
  for (int n : levels) {
    const GridMesh mesh = GridMesh::uniform(truncation.lower, truncation.upper, n);
    const GridField field = GridField::sample(f, mesh);
    out.emplace_back(n, hk_variation(field, anchor).hk_total);
  }
  return out;
}

// is_measure_inducing lives here with the variation machinery; declared in measures.hpp.

namespace {

InducingReport classify(std::vector<int> levels, std::vector<double> hk) {
  InducingReport rep;
  rep.levels = std::move(levels);
  rep.hk_sequence = std::move(hk);
  const std::size_t n = rep.hk_sequence.size();
  if (n >= 3) {
    const double a = rep.hk_sequence[n - 3];
    const double b = rep.hk_sequence[n - 2];
    const double c = rep.hk_sequence[n - 1];
    const double denom = std::max(std::abs(b), 1e-300);
    if (std::abs(c - b) / denom < 1e-3)
      rep.verdict = InducingReport::Verdict::Inducing;
    else if (b >= 1.5 * std::max(a, 1e-300) && c >= 1.5 * b)
      rep.verdict = InducingReport::Verdict::Diverging;
    else
      rep.verdict = InducingReport::Verdict::Inconclusive;
  } else if (n == 2) {
    const double denom = std::max(std::abs(rep.hk_sequence[0]), 1e-300);
    if (std::abs(rep.hk_sequence[1] - rep.hk_sequence[0]) / denom < 1e-3)
      rep.verdict = InducingReport::Verdict::Inducing;
    else if (rep.hk_sequence[1] >= 1.5 * rep.hk_sequence[0])
      rep.verdict = InducingReport::Verdict::Diverging;
  }
  return rep;
}

}  // namespace

InducingReport is_measure_inducing(const TaggedFunction& f, const std::vector<int>& levels) {
  auto profile = variation_profile(f, levels);
  std::vector<double> hk;
  for (const auto& [n, v] : profile) hk.push_back(v);
  return classify(levels, std::move(hk));
}

InducingReport is_measure_inducing(const TaggedFunction& f, const std::vector<int>& levels,
                                   const Box& truncation) {
  auto profile = variation_profile(f, levels, truncation);
  std::vector<double> hk;
  for (const auto& [n, v] : profile) hk.push_back(v);
  return classify(levels, std::move(hk));
}

}  // namespace stieltjes
