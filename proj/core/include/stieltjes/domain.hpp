#ifndef STIELTJES_DOMAIN_HPP
#define STIELTJES_DOMAIN_HPP

#include <bit>
#include <cstdint>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stieltjes/errors.hpp"

namespace stieltjes {

inline constexpr int kMaxDims = 16;

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A subset I of the axis set {0,...,d-1}, encoded as a bitmask. May be empty.
class SubsetIndex {
 public:
  constexpr SubsetIndex() = default;
  explicit constexpr SubsetIndex(std::uint32_t bits) : bits_(bits) {}

  static SubsetIndex full(int dims) {
    return SubsetIndex((dims >= 32) ? ~0u : ((1u << dims) - 1u));
  }
  static SubsetIndex single(int axis) { return SubsetIndex(1u << axis); }

  bool contains(int axis) const { return (bits_ >> axis) & 1u; }
  int count() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint32_t bits() const { return bits_; }

  /// Member axes in ascending order.
  std::vector<int> axes() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = 0; i < 32; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  bool is_subset_of(SubsetIndex other) const { return (bits_ & ~other.bits_) == 0; }

  friend bool operator==(SubsetIndex a, SubsetIndex b) = default;
  friend bool operator<(SubsetIndex a, SubsetIndex b) { return a.bits_ < b.bits_; }

  std::string to_string() const;  // e.g. "{1,3}" (1-based axes), "{}" when empty

 private:
  std::uint32_t bits_ = 0;
};

/// One coordinate interval of a box domain. Infinite endpoints are always open.
struct AxisBounds {
  double lower = 0.0;
  double upper = 1.0;
  bool lower_closed = true;
  bool upper_closed = true;
};

/// Cartesian product of 1-D intervals; every function and measure lives on one.
class BoxDomain {
 public:
  explicit BoxDomain(std::vector<AxisBounds> axes);

  static BoxDomain unit_cube(int dims);
  /// [0, +inf)^dims
  static BoxDomain nonneg_orthant(int dims);
  /// [lo, hi]^dims, closed
  static BoxDomain cube(int dims, double lo, double hi);

  int dims() const { return static_cast<int>(axes_.size()); }
  const AxisBounds& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<AxisBounds>& axes() const { return axes_; }

  bool bounded() const;
  /// True when the point lies in the closure of the domain.
  bool contains(std::span<const double> p) const;

  /// Restriction to the axes of a nonempty subset, preserving order.
  BoxDomain restrict_to(SubsetIndex I) const;

 private:
  std::vector<AxisBounds> axes_;
};

/// Closed axis-parallel box with finite corners.
struct Box {
  Point lower;
  Point upper;

  int dims() const { return static_cast<int>(lower.size()); }
};

/// Per-axis strictly increasing coordinate lists covering a (possibly truncated) domain.
class GridMesh {
 public:
  explicit GridMesh(std::vector<std::vector<double>> axes);

  /// Uniform mesh with `cells` cells per axis on a bounded domain.
  static GridMesh uniform(const BoxDomain& domain, int cells);
  static GridMesh uniform(std::span<const double> lo, std::span<const double> hi, int cells);
  /// Mesh from explicit per-axis coordinates (sorted + deduplicated copies).
  static GridMesh from_coordinates(std::vector<std::vector<double>> axes);

  int dims() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  std::size_t size(int i) const { return axes_[static_cast<std::size_t>(i)].size(); }

  std::size_t node_count() const;
  std::size_t cell_count() const;

  GridMesh restrict_to(SubsetIndex I) const;

  /// Hull of the mesh as a closed box.
  Box hull() const;

  std::string descriptor() const;  // e.g. "65x65 grid on [0,1]x[0,1]"

 private:
  std::vector<std::vector<double>> axes_;
};

/// Every original coordinate is retained; each cell is split into `factor` equal parts.
GridMesh refine(const GridMesh& mesh, int factor);

/// All subsets of {1..d} in increasing bitmask order; 1 <= d <= 16.
std::vector<SubsetIndex> enumerate_subsets(int dims, bool include_empty);

/// Forward range over the grid cells of the partition restricted to the axes in I.
class CellRange {
 public:
  CellRange(const GridMesh& mesh, SubsetIndex I);

  class iterator {
   public:
    using value_type = Box;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const CellRange* range, bool at_end);

    Box operator*() const;
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++(*this);
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ && (a.done_ || a.idx_ == b.idx_);
    }

   private:
    const CellRange* range_ = nullptr;
    std::vector<std::size_t> idx_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(this, false); }
  iterator end() const { return iterator(this, true); }
  std::size_t size() const { return count_; }

 private:
  friend class iterator;
  const GridMesh* mesh_;
  std::vector<int> axes_;
  std::size_t count_;
};

CellRange cells(const GridMesh& mesh, SubsetIndex I);

}  // namespace stieltjes

#endif
