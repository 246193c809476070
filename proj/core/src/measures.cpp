#include "stieltjes/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace stieltjes {

namespace {

constexpr double kMergeTol = 1e-12;  // per-coordinate atom identification

// lexicographic with per-coordinate tolerance; 0 = same point
int fuzzy_compare(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d < -kMergeTol) return -1;
    if (d > kMergeTol) return 1;
  }
  return 0;
}

std::vector<Atom> normalize_atoms(int dims, std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (static_cast<int>(a.position.size()) != dims)
      throw dimension_error("AtomicSignedMeasure: atom dimension mismatch");
    for (double c : a.position)
      if (!std::isfinite(c)) throw error("AtomicSignedMeasure: atom coordinates must be finite");
    if (!std::isfinite(a.weight)) throw error("AtomicSignedMeasure: atom weight must be finite");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (Atom& a : atoms) {
    if (!out.empty() && fuzzy_compare(out.back().position, a.position) == 0)
      out.back().weight += a.weight;
    else
      out.push_back(std::move(a));
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == 0.0; });
  return out;
}

}  // namespace

AtomicSignedMeasure::AtomicSignedMeasure(int dims, std::vector<Atom> atoms, BoxDomain enclosure)
    : dims_(dims), atoms_(normalize_atoms(dims, std::move(atoms))), enclosure_(std::move(enclosure)) {
  if (enclosure_.dims() != dims_)
    throw dimension_error("AtomicSignedMeasure: enclosure dimension mismatch");
}

AtomicSignedMeasure AtomicSignedMeasure::empty(BoxDomain enclosure) {
  const int d = enclosure.dims();
  return AtomicSignedMeasure(d, {}, std::move(enclosure));
}

double AtomicSignedMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double AtomicSignedMeasure::total_variation() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += std::abs(a.weight);
  return s;
}

AtomicSignedMeasure AtomicSignedMeasure::positive_part() const {
  std::vector<Atom> out;
  for (const Atom& a : atoms_)
    if (a.weight > 0.0) out.push_back(a);
  return AtomicSignedMeasure(dims_, std::move(out), enclosure_);
}

AtomicSignedMeasure AtomicSignedMeasure::negative_part() const {
  std::vector<Atom> out;
  for (const Atom& a : atoms_)
    if (a.weight < 0.0) out.push_back({a.position, -a.weight});
  return AtomicSignedMeasure(dims_, std::move(out), enclosure_);
}

double total_variation_distance(const AtomicSignedMeasure& a, const AtomicSignedMeasure& b) {
  if (a.dims() != b.dims()) throw dimension_error("total_variation_distance: dimension mismatch");
  std::vector<Atom> diff = a.atoms();
  for (const Atom& x : b.atoms()) diff.push_back({x.position, -x.weight});
  AtomicSignedMeasure d(a.dims(), std::move(diff), a.enclosure());
  return d.total_variation();
}

// ---------------------------------------------------------------------------
// GridField
// ---------------------------------------------------------------------------

GridField::GridField(GridMesh mesh, std::vector<double> values, ContinuityTag tag)
    : mesh_(std::move(mesh)), values_(std::move(values)), tag_(tag) {
  if (values_.size() != mesh_.node_count())
    throw error("GridField: value array does not match the mesh shape");
  for (double v : values_)
    if (!std::isfinite(v)) throw error("GridField: values must be finite");
  strides_.assign(static_cast<std::size_t>(mesh_.dims()), 1);
  for (int i = mesh_.dims() - 2; i >= 0; --i)
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * mesh_.size(i + 1);
}

GridField GridField::sample(const TaggedFunction& f, const GridMesh& mesh) {
  if (f.dims() != mesh.dims()) throw dimension_error("GridField::sample: dimension mismatch");
  const int d = mesh.dims();
  std::vector<double> vals(mesh.node_count());
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  Point p(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < vals.size(); ++flat) {
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
    const double v = f(p);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "GridField::sample: non-finite value at (";
      for (int i = 0; i < d; ++i) os << (i ? "," : "") << p[static_cast<std::size_t>(i)];
      os << ")";
      throw evaluation_error(os.str());
    }
    vals[flat] = v;
    for (int i = d - 1; i >= 0; --i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < mesh.size(i)) break;
      k = 0;
    }
  }
  return GridField(mesh, std::move(vals), f.tag());
}

std::size_t GridField::flat(std::span<const std::size_t> idx) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) f += idx[i] * strides_[i];
  return f;
}

double GridField::cell_delta(std::span<const std::size_t> cell) const {
  const int d = mesh_.dims();
  const std::size_t base = flat(cell);
  double s = 0.0;
  for (std::uint32_t m = 0; m < (1u << d); ++m) {
    std::size_t off = 0;
    int upper = 0;
    for (int i = 0; i < d; ++i)
      if ((m >> i) & 1u) {
        off += strides_[static_cast<std::size_t>(i)];
        ++upper;
      }
    const double sign = ((d - upper) % 2 == 0) ? 1.0 : -1.0;
    s += sign * values_[base + off];
  }
  return s;
}

GridField GridField::slice(SubsetIndex I, bool at_lower) const {
  if (I.empty()) throw invalid_subset_error("GridField::slice: empty subset");
  const int d = mesh_.dims();
  if (I == SubsetIndex::full(d)) return *this;
  GridMesh sub = mesh_.restrict_to(I);
  const auto axes = I.axes();
  std::vector<double> vals(sub.node_count());
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<std::size_t> full_idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    full_idx[static_cast<std::size_t>(i)] = (at_lower || I.contains(i)) ? 0 : mesh_.size(i) - 1;
  for (std::size_t flat_out = 0; flat_out < vals.size(); ++flat_out) {
    for (std::size_t k = 0; k < axes.size(); ++k)
      full_idx[static_cast<std::size_t>(axes[k])] = idx[k];
    vals[flat_out] = values_[flat(full_idx)];
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < sub.size(static_cast<int>(k))) break;
      idx[k] = 0;
    }
  }
  return GridField(std::move(sub), std::move(vals), tag_);
}

// ---------------------------------------------------------------------------
// Quasi-volumes
// ---------------------------------------------------------------------------

double delta(const TaggedFunction& f, const Box& box) {
  const int d = f.dims();
  if (box.dims() != d) throw dimension_error("delta: box dimension mismatch");
  Point p(static_cast<std::size_t>(d));
  double s = 0.0;
  for (std::uint32_t m = 0; m < (1u << d); ++m) {
    int upper = 0;
    for (int i = 0; i < d; ++i) {
      const bool up = (m >> i) & 1u;
      p[static_cast<std::size_t>(i)] = up ? box.upper[static_cast<std::size_t>(i)]
                                          : box.lower[static_cast<std::size_t>(i)];
      upper += up;
    }
    const double v = f(p);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "delta: evaluator returned a non-finite value at a box vertex (";
      for (int i = 0; i < d; ++i) os << (i ? "," : "") << p[static_cast<std::size_t>(i)];
      os << ")";
      throw evaluation_error(os.str());
    }
    s += (((d - upper) % 2 == 0) ? 1.0 : -1.0) * v;
  }
  return s;
}

double delta(const GridField& f, const Box& box) {
  const int d = f.mesh().dims();
  if (box.dims() != d) throw dimension_error("delta: box dimension mismatch");
  // locate corners among the grid nodes
  std::vector<std::size_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto& ax = f.mesh().axis(i);
    auto find = [&ax](double v) -> std::size_t {
      auto it = std::lower_bound(ax.begin(), ax.end(), v - kMergeTol);
      if (it == ax.end() || std::abs(*it - v) > kMergeTol)
        throw error("delta(GridField): box corner is not a grid node");
      return static_cast<std::size_t>(it - ax.begin());
    };
    lo[static_cast<std::size_t>(i)] = find(box.lower[static_cast<std::size_t>(i)]);
    hi[static_cast<std::size_t>(i)] = find(box.upper[static_cast<std::size_t>(i)]);
  }
  double s = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d));
  for (std::uint32_t m = 0; m < (1u << d); ++m) {
    int upper = 0;
    for (int i = 0; i < d; ++i) {
      const bool up = (m >> i) & 1u;
      idx[static_cast<std::size_t>(i)] = up ? hi[static_cast<std::size_t>(i)] : lo[static_cast<std::size_t>(i)];
      upper += up;
    }
    s += (((d - upper) % 2 == 0) ? 1.0 : -1.0) * f.value(idx);
  }
  return s;
}

double d_limit(const TaggedFunction& f, const Box& box, const LimitScheme& scheme) {
  const int d = f.dims();
  if (box.dims() != d) throw dimension_error("d_limit: box dimension mismatch");
  if (f.tag() == ContinuityTag::Untagged)
    throw tag_required_error("d_limit: a continuity tag is required");
  if (f.tag() == ContinuityTag::Continuous) return delta(f, box);

  const bool offset_lower = f.tag() == ContinuityTag::RightContinuous;
  // With a right tag the +eps limits collapse (f(y+eps) -> f(y)) and only the
  // lower corners are approached from below; mirrored for a left tag.
  std::vector<int> active;  // axes whose corner actually moves
  Point start(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const AxisBounds& b = f.domain().axis(i);
    const double corner = offset_lower ? box.lower[static_cast<std::size_t>(i)]
                                       : box.upper[static_cast<std::size_t>(i)];
    const double endpoint = offset_lower ? b.lower : b.upper;
    if (std::isfinite(endpoint) && corner == endpoint) continue;  // pinned at the boundary
    active.push_back(i);
  }

  // offsets shrink as eps0 * 2^(-s*rate_k); unequal per-axis rates probe the
  // order-independence required of the iterated limit
  auto delta_at = [&](int step, bool staggered) {
    Box probe = box;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const int i = active[k];
      const AxisBounds& b = f.domain().axis(i);
      const double rate = staggered ? static_cast<double>(k + 1) : 1.0;
      const double off = scheme.initial_offset * std::exp2(-step * rate);
      if (offset_lower) {
        double v = box.lower[static_cast<std::size_t>(i)] - off;
        if (std::isfinite(b.lower)) v = std::max(v, b.lower);
        probe.lower[static_cast<std::size_t>(i)] = v;
      } else {
        double v = box.upper[static_cast<std::size_t>(i)] + off;
        if (std::isfinite(b.upper)) v = std::min(v, b.upper);
        probe.upper[static_cast<std::size_t>(i)] = v;
      }
    }
    return delta(f, probe);
  };

  auto stabilized = [&](bool staggered) {
    double prev = 0.0;
    bool have_prev = false;
    double value = 0.0;
    for (int s = 0; s <= scheme.max_halvings; ++s) {
      value = delta_at(s, staggered);
      if (have_prev && std::abs(value - prev) < scheme.stabilization_tol) return value;
      prev = value;
      have_prev = true;
    }
    throw limit_divergence_error("d_limit failed to stabilize", std::abs(value - prev));
  };

  const double uniform = stabilized(false);
  if (scheme.check_reverse_order && active.size() > 1) {
    const double staggered = stabilized(true);
    if (std::abs(uniform - staggered) > scheme.order_tol)
      throw limit_divergence_error("d_limit is order sensitive",
                                   std::abs(uniform - staggered));
  }
  return uniform;
}

// ---------------------------------------------------------------------------
// Extraction and cumulative grids
// ---------------------------------------------------------------------------

AtomicSignedMeasure extract_measure(const GridField& f) {
  const int d = f.mesh().dims();
  if (f.tag() == ContinuityTag::Untagged)
    throw tag_required_error("extract_measure: a one-sided or continuous tag is required");
  std::vector<Atom> atoms;
  const GridMesh& mesh = f.mesh();
  std::vector<std::size_t> cell(static_cast<std::size_t>(d), 0);
  const std::size_t ncells = mesh.cell_count();
  for (std::size_t c = 0; c < ncells; ++c) {
    const double w = f.cell_delta(cell);
    if (w != 0.0) {
      Point pos(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const auto& ax = mesh.axis(i);
        const std::size_t k = cell[static_cast<std::size_t>(i)];
        switch (f.tag()) {
          case ContinuityTag::RightContinuous: pos[static_cast<std::size_t>(i)] = ax[k + 1]; break;
          case ContinuityTag::LeftContinuous: pos[static_cast<std::size_t>(i)] = ax[k]; break;
          default: pos[static_cast<std::size_t>(i)] = 0.5 * (ax[k] + ax[k + 1]); break;
        }
      }
      atoms.push_back({std::move(pos), w});
    }
    for (int i = d - 1; i >= 0; --i) {
      auto& k = cell[static_cast<std::size_t>(i)];
      if (++k < mesh.size(i) - 1) break;
      k = 0;
    }
  }
  BoxDomain enc = BoxDomain([&] {
    std::vector<AxisBounds> axes;
    for (int i = 0; i < d; ++i)
      axes.push_back({mesh.axis(i).front(), mesh.axis(i).back(), true, true});
    return axes;
  }());
  return AtomicSignedMeasure(d, std::move(atoms), std::move(enc));
}

GridField cumulative_grid(const AtomicSignedMeasure& m, const GridMesh& mesh, ContinuityTag tag) {
  const int d = m.dims();
  if (mesh.dims() != d) throw dimension_error("cumulative_grid: dimension mismatch");
  if (tag != ContinuityTag::RightContinuous && tag != ContinuityTag::LeftContinuous)
    throw tag_required_error("cumulative_grid: tag must be one-sided");
  const bool inclusive = tag == ContinuityTag::RightContinuous;
  std::vector<double> vals(mesh.node_count(), 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  Point node(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < vals.size(); ++flat) {
    for (int i = 0; i < d; ++i) node[static_cast<std::size_t>(i)] = mesh.axis(i)[idx[static_cast<std::size_t>(i)]];
    double s = 0.0;
    for (const Atom& a : m.atoms()) {
      bool in = true;
      for (int i = 0; i < d && in; ++i) {
        const double p = a.position[static_cast<std::size_t>(i)];
        const double x = node[static_cast<std::size_t>(i)];
        in = inclusive ? (p <= x + kMergeTol) : (p < x - kMergeTol);
      }
      if (in) s += a.weight;
    }
    vals[flat] = s;
    for (int i = d - 1; i >= 0; --i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < mesh.size(i)) break;
      k = 0;
    }
  }
  return GridField(mesh, std::move(vals), tag);
}

AtomicSignedMeasure marginal_measure(const AtomicSignedMeasure& m, SubsetIndex I) {
  if (I.empty()) throw invalid_subset_error("marginal_measure: empty subset");
  const auto axes = I.axes();
  for (int a : axes)
    if (a >= m.dims()) throw invalid_subset_error("marginal_measure: axis out of range");
  std::vector<Atom> projected;
  projected.reserve(m.atoms().size());
  for (const Atom& a : m.atoms()) {
    Point p;
    p.reserve(axes.size());
    for (int i : axes) p.push_back(a.position[static_cast<std::size_t>(i)]);
    projected.push_back({std::move(p), a.weight});
  }
  return AtomicSignedMeasure(static_cast<int>(axes.size()), std::move(projected),
                             m.enclosure().restrict_to(I));
}

AtomicSignedMeasure pushforward(const AtomicSignedMeasure& m,
                                const std::vector<std::function<double(double)>>& maps,
                                BoxDomain target) {
  const int d = m.dims();
  if (static_cast<int>(maps.size()) != d) throw dimension_error("pushforward: need one map per axis");
  // verify strict monotonicity on the atom coordinate set
  for (int i = 0; i < d; ++i) {
    std::vector<double> coords;
    coords.reserve(m.atoms().size());
    for (const Atom& a : m.atoms()) coords.push_back(a.position[static_cast<std::size_t>(i)]);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    for (std::size_t k = 0; k + 1 < coords.size(); ++k)
      if (!(maps[static_cast<std::size_t>(i)](coords[k]) <
            maps[static_cast<std::size_t>(i)](coords[k + 1])))
        throw transform_error("pushforward: map on axis " + std::to_string(i + 1) +
                              " is not strictly increasing on the atom set");
  }
  std::vector<Atom> out;
  out.reserve(m.atoms().size());
  for (const Atom& a : m.atoms()) {
    Point p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      p[static_cast<std::size_t>(i)] = maps[static_cast<std::size_t>(i)](a.position[static_cast<std::size_t>(i)]);
    out.push_back({std::move(p), a.weight});
  }
  return AtomicSignedMeasure(d, std::move(out), std::move(target));
}

AtomicSignedMeasure measure_from_density(const std::function<double(std::span<const double>)>& rho,
                                         const GridMesh& mesh) {
  const int d = mesh.dims();
  std::vector<Atom> atoms;
  std::vector<std::size_t> cell(static_cast<std::size_t>(d), 0);
  Point mid(static_cast<std::size_t>(d));
  const std::size_t ncells = mesh.cell_count();
  for (std::size_t c = 0; c < ncells; ++c) {
    double vol = 1.0;
    for (int i = 0; i < d; ++i) {
      const auto& ax = mesh.axis(i);
      const std::size_t k = cell[static_cast<std::size_t>(i)];
      mid[static_cast<std::size_t>(i)] = 0.5 * (ax[k] + ax[k + 1]);
      vol *= ax[k + 1] - ax[k];
    }
    const double v = rho(mid);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "measure_from_density: non-finite density at cell midpoint (";
      for (int i = 0; i < d; ++i) os << (i ? "," : "") << mid[static_cast<std::size_t>(i)];
      os << ")";
      throw evaluation_error(os.str());
    }
    if (v != 0.0) atoms.push_back({mid, v * vol});
    for (int i = d - 1; i >= 0; --i) {
      auto& k = cell[static_cast<std::size_t>(i)];
      if (++k < mesh.size(i) - 1) break;
      k = 0;
    }
  }
  std::vector<AxisBounds> axes;
  for (int i = 0; i < d; ++i)
    axes.push_back({mesh.axis(i).front(), mesh.axis(i).back(), true, true});
  return AtomicSignedMeasure(d, std::move(atoms), BoxDomain(std::move(axes)));
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

Decomposition decompose(const GridField& f) {
  if (!is_right(f.tag()))
    throw tag_required_error("decompose: the field must be right-tagged");
  const GridMesh& mesh = f.mesh();
  const int d = mesh.dims();

  // cell quasi-volumes of F^f coincide with those of f (marginal terms are
  // constant in at least one active axis of every cell)
  std::vector<std::size_t> sizes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) sizes[static_cast<std::size_t>(i)] = mesh.size(i);

  std::vector<double> pos(mesh.node_count(), 0.0);
  std::vector<double> neg(mesh.node_count(), 0.0);

  // node strides
  std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i)
    stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i) + 1] * sizes[static_cast<std::size_t>(i) + 1];

  // place each cell mass at the cell's upper-right node, then accumulate
  std::vector<std::size_t> cell(static_cast<std::size_t>(d), 0);
  const std::size_t ncells = mesh.cell_count();
  for (std::size_t c = 0; c < ncells; ++c) {
    const double w = f.cell_delta(cell);
    std::size_t node = 0;
    for (int i = 0; i < d; ++i)
      node += (cell[static_cast<std::size_t>(i)] + 1) * stride[static_cast<std::size_t>(i)];
    if (w > 0.0)
      pos[node] += w;
    else if (w < 0.0)
      neg[node] -= w;
    for (int i = d - 1; i >= 0; --i) {
      auto& k = cell[static_cast<std::size_t>(i)];
      if (++k < sizes[static_cast<std::size_t>(i)] - 1) break;
      k = 0;
    }
  }

  // d-dimensional prefix sums turn per-node cell masses into orthant CDFs
  for (auto* arr : {&pos, &neg}) {
    for (int i = 0; i < d; ++i) {
      const std::size_t s = stride[static_cast<std::size_t>(i)];
      const std::size_t n = sizes[static_cast<std::size_t>(i)];
      for (std::size_t base = 0; base < arr->size(); ++base) {
        const std::size_t k = (base / s) % n;
        if (k > 0) (*arr)[base] += (*arr)[base - s];
      }
    }
  }

  return Decomposition{GridField(mesh, std::move(pos), ContinuityTag::RightContinuous),
                       GridField(mesh, std::move(neg), ContinuityTag::RightContinuous)};
}

std::string to_string(InducingReport::Verdict v) {
  switch (v) {
    case InducingReport::Verdict::Inducing: return "inducing";
    case InducingReport::Verdict::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

// ---------------------------------------------------------------------------
// Atom CSV
// ---------------------------------------------------------------------------

void write_atom_csv(std::ostream& os, const AtomicSignedMeasure& m) {
  os << "# dims=" << m.dims() << "\n";
  char buf[64];
  for (const Atom& a : m.atoms()) {
    for (double c : a.position) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      os << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", a.weight);
    os << buf << "\n";
  }
}

AtomicSignedMeasure read_atom_csv(std::istream& is, BoxDomain enclosure) {
  std::string line;
  if (!std::getline(is, line)) throw parse_error("atom csv: empty input");
  int dims = 0;
  if (std::sscanf(line.c_str(), "# dims=%d", &dims) != 1 || dims < 1 || dims > kMaxDims)
    throw parse_error("atom csv: bad header, expected '# dims=d'");
  std::vector<Atom> atoms;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Atom a;
    a.position.resize(static_cast<std::size_t>(dims));
    for (int i = 0; i < dims; ++i) {
      std::string field;
      if (!std::getline(row, field, ',')) throw parse_error("atom csv: short row");
      a.position[static_cast<std::size_t>(i)] = std::stod(field);
    }
    std::string field;
    if (!std::getline(row, field, ',')) throw parse_error("atom csv: missing weight");
    a.weight = std::stod(field);
    atoms.push_back(std::move(a));
  }
  return AtomicSignedMeasure(dims, std::move(atoms), std::move(enclosure));
}

}  // namespace stieltjes
