#include "stieltjes/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stieltjes {

std::string SubsetIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!contains(i)) continue;
    if (!first) os << ',';
    os << (i + 1);  // axes reported 1-based, matching the usual index-set notation
    first = false;
  }
  os << '}';
  return os.str();
}

BoxDomain::BoxDomain(std::vector<AxisBounds> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxDims)
    throw dimension_error("BoxDomain: dims must be in 1.." + std::to_string(kMaxDims));
  for (const AxisBounds& a : axes_) {
    if (!(a.lower < a.upper))
      throw error("BoxDomain: axis interval is empty (lower >= upper)");
    if (std::isinf(a.lower) && a.lower_closed)
      throw error("BoxDomain: -inf endpoint cannot be closed");
    if (std::isinf(a.upper) && a.upper_closed)
      throw error("BoxDomain: +inf endpoint cannot be closed");
  }
}

BoxDomain BoxDomain::unit_cube(int dims) { return cube(dims, 0.0, 1.0); }

BoxDomain BoxDomain::cube(int dims, double lo, double hi) {
  return BoxDomain(std::vector<AxisBounds>(static_cast<std::size_t>(dims),
                                           AxisBounds{lo, hi, true, true}));
}

BoxDomain BoxDomain::nonneg_orthant(int dims) {
  return BoxDomain(std::vector<AxisBounds>(static_cast<std::size_t>(dims),
                                           AxisBounds{0.0, kInf, true, false}));
}

bool BoxDomain::bounded() const {
  return std::all_of(axes_.begin(), axes_.end(), [](const AxisBounds& a) {
    return std::isfinite(a.lower) && std::isfinite(a.upper);
  });
}

bool BoxDomain::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dims()) return false;
  for (int i = 0; i < dims(); ++i) {
    const AxisBounds& a = axes_[static_cast<std::size_t>(i)];
    if (p[static_cast<std::size_t>(i)] < a.lower || p[static_cast<std::size_t>(i)] > a.upper)
      return false;
  }
  return true;
}

BoxDomain BoxDomain::restrict_to(SubsetIndex I) const {
  if (I.empty()) throw invalid_subset_error("BoxDomain::restrict_to: empty subset");
  std::vector<AxisBounds> out;
  for (int i : I.axes()) {
    if (i >= dims()) throw invalid_subset_error("BoxDomain::restrict_to: axis out of range");
    out.push_back(axes_[static_cast<std::size_t>(i)]);
  }
  return BoxDomain(std::move(out));
}

GridMesh::GridMesh(std::vector<std::vector<double>> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxDims)
    throw dimension_error("GridMesh: dims must be in 1.." + std::to_string(kMaxDims));
  for (const auto& ax : axes_) {
    if (ax.size() < 2) throw error("GridMesh: every axis needs at least 2 coordinates");
    for (std::size_t k = 0; k + 1 < ax.size(); ++k)
      if (!(ax[k] < ax[k + 1])) throw error("GridMesh: coordinates must increase strictly");
    for (double v : ax)
      if (!std::isfinite(v)) throw error("GridMesh: coordinates must be finite");
  }
}

GridMesh GridMesh::uniform(const BoxDomain& domain, int cells) {
  if (!domain.bounded())
    throw error("GridMesh::uniform: domain is unbounded; supply an explicit truncation");
  Point lo(static_cast<std::size_t>(domain.dims()));
  Point hi(static_cast<std::size_t>(domain.dims()));
  for (int i = 0; i < domain.dims(); ++i) {
    lo[static_cast<std::size_t>(i)] = domain.axis(i).lower;
    hi[static_cast<std::size_t>(i)] = domain.axis(i).upper;
  }
  return uniform(lo, hi, cells);
}

GridMesh GridMesh::uniform(std::span<const double> lo, std::span<const double> hi, int cells) {
  if (cells < 1) throw error("GridMesh::uniform: need at least one cell per axis");
  if (lo.size() != hi.size()) throw dimension_error("GridMesh::uniform: corner size mismatch");
  std::vector<std::vector<double>> axes(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    axes[i].resize(static_cast<std::size_t>(cells) + 1);
    for (int k = 0; k <= cells; ++k)
      axes[i][static_cast<std::size_t>(k)] =
          lo[i] + (hi[i] - lo[i]) * static_cast<double>(k) / static_cast<double>(cells);
    axes[i].front() = lo[i];
    axes[i].back() = hi[i];
  }
  return GridMesh(std::move(axes));
}

GridMesh GridMesh::from_coordinates(std::vector<std::vector<double>> axes) {
  for (auto& ax : axes) {
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
  }
  return GridMesh(std::move(axes));
}

std::size_t GridMesh::node_count() const {
  std::size_t n = 1;
  for (const auto& ax : axes_) n *= ax.size();
  return n;
}

std::size_t GridMesh::cell_count() const {
  std::size_t n = 1;
  for (const auto& ax : axes_) n *= ax.size() - 1;
  return n;
}

GridMesh GridMesh::restrict_to(SubsetIndex I) const {
  if (I.empty()) throw invalid_subset_error("GridMesh::restrict_to: empty subset");
  std::vector<std::vector<double>> out;
  for (int i : I.axes()) {
    if (i >= dims()) throw invalid_subset_error("GridMesh::restrict_to: axis out of range");
    out.push_back(axes_[static_cast<std::size_t>(i)]);
  }
  return GridMesh(std::move(out));
}

Box GridMesh::hull() const {
  Box b;
  for (const auto& ax : axes_) {
    b.lower.push_back(ax.front());
    b.upper.push_back(ax.back());
  }
  return b;
}

std::string GridMesh::descriptor() const {
  std::ostringstream os;
  for (int i = 0; i < dims(); ++i) {
    if (i) os << 'x';
    os << size(i);
  }
  os << " grid on ";
  for (int i = 0; i < dims(); ++i) {
    if (i) os << 'x';
    os << '[' << axis(i).front() << ',' << axis(i).back() << ']';
  }
  return os.str();
}

GridMesh refine(const GridMesh& mesh, int factor) {
  if (factor < 1) throw error("refine: factor must be >= 1");
  if (factor == 1) return mesh;
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(mesh.dims()));
  for (int i = 0; i < mesh.dims(); ++i) {
    const auto& ax = mesh.axis(i);
    auto& out = axes[static_cast<std::size_t>(i)];
    out.reserve((ax.size() - 1) * static_cast<std::size_t>(factor) + 1);
    for (std::size_t k = 0; k + 1 < ax.size(); ++k) {
      out.push_back(ax[k]);
      for (int j = 1; j < factor; ++j)
        out.push_back(ax[k] + (ax[k + 1] - ax[k]) * static_cast<double>(j) /
                                  static_cast<double>(factor));
    }
    out.push_back(ax.back());
  }
  return GridMesh(std::move(axes));
}

std::vector<SubsetIndex> enumerate_subsets(int dims, bool include_empty) {
  if (dims < 1 || dims > kMaxDims)
    throw dimension_error("enumerate_subsets: dims must be in 1.." + std::to_string(kMaxDims));
  std::vector<SubsetIndex> out;
  out.reserve((1u << dims) - (include_empty ? 0u : 1u));
  for (std::uint32_t m = include_empty ? 0u : 1u; m < (1u << dims); ++m)
    out.push_back(SubsetIndex(m));
  return out;
}

CellRange::CellRange(const GridMesh& mesh, SubsetIndex I) : mesh_(&mesh) {
  if (I.empty()) throw invalid_subset_error("cells: empty subset");
  axes_ = I.axes();
  count_ = 1;
  for (int i : axes_) {
    if (i >= mesh.dims()) throw invalid_subset_error("cells: axis out of range");
    count_ *= mesh.size(i) - 1;
  }
}

CellRange cells(const GridMesh& mesh, SubsetIndex I) { return CellRange(mesh, I); }

CellRange::iterator::iterator(const CellRange* range, bool at_end)
    : range_(range), done_(at_end) {
  if (!done_) {
    idx_.assign(range_->axes_.size(), 0);
    if (range_->count_ == 0) done_ = true;
  }
}

Box CellRange::iterator::operator*() const {
  Box b;
  b.lower.reserve(idx_.size());
  b.upper.reserve(idx_.size());
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    const auto& ax = range_->mesh_->axis(range_->axes_[k]);
    b.lower.push_back(ax[idx_[k]]);
    b.upper.push_back(ax[idx_[k] + 1]);
  }
  return b;
}

CellRange::iterator& CellRange::iterator::operator++() {
  for (std::size_t k = idx_.size(); k-- > 0;) {
    if (++idx_[k] < range_->mesh_->size(range_->axes_[k]) - 1) return *this;
    idx_[k] = 0;
  }
  done_ = true;
  return *this;
}

}  // namespace stieltjes
