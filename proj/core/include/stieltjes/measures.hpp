#ifndef STIELTJES_MEASURES_HPP
#define STIELTJES_MEASURES_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "stieltjes/domain.hpp"
#include "stieltjes/funcspace.hpp"

namespace stieltjes {

struct Atom {
  Point position;
  double weight = 0.0;
};

/// Finite list of weighted point masses; the exact discrete representation of
/// an induced signed measure. Atoms are kept sorted lexicographically; points
/// closer than 1e-12 per coordinate are merged and zero weights dropped.
class AtomicSignedMeasure {
 public:
  AtomicSignedMeasure(int dims, std::vector<Atom> atoms, BoxDomain enclosure);

  static AtomicSignedMeasure empty(BoxDomain enclosure);

  int dims() const { return dims_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const BoxDomain& enclosure() const { return enclosure_; }

  double total_mass() const;
  double total_variation() const;

  /// Jordan parts: positive-weight atoms and negated negative-weight atoms.
  AtomicSignedMeasure positive_part() const;
  AtomicSignedMeasure negative_part() const;

 private:
  int dims_;
  std::vector<Atom> atoms_;
  BoxDomain enclosure_;
};

/// Total-variation distance |m1 - m2|(whole space) between atomic measures.
double total_variation_distance(const AtomicSignedMeasure& a, const AtomicSignedMeasure& b);

/// Function values sampled on a finite rectangular grid; the finite substrate
/// for variation, decomposition, and measure extraction. Values are stored
/// row-major with the last axis fastest.
class GridField {
 public:
  GridField(GridMesh mesh, std::vector<double> values, ContinuityTag tag);

  /// Sample a tagged function at the mesh nodes (tag copied from f).
  static GridField sample(const TaggedFunction& f, const GridMesh& mesh);

  const GridMesh& mesh() const { return mesh_; }
  ContinuityTag tag() const { return tag_; }
  const std::vector<double>& values() const { return values_; }

  double value(std::span<const std::size_t> idx) const { return values_[flat(idx)]; }
  std::size_t flat(std::span<const std::size_t> idx) const;

  /// Quasi-volume Delta over the cell whose lower corner has node index `cell`.
  double cell_delta(std::span<const std::size_t> cell) const;

  /// Grid slice with the axes outside I pinned at the first (anchor=lower)
  /// or last (anchor=upper) coordinate; this is the grid-scale marginal.
  GridField slice(SubsetIndex I, bool at_lower) const;

 private:
  GridMesh mesh_;
  std::vector<double> values_;
  std::vector<std::size_t> strides_;
  ContinuityTag tag_;
};

/// Alternating-sign sum of f over the 2^d vertices of the box
/// (sign (-1)^{number of lower coordinates}).
double delta(const TaggedFunction& f, const Box& box);
double delta(const GridField& f, const Box& box);  // corners must be grid nodes

/// Outer-approximated quasi-volume D_{x,y}[f]: the limit of Delta over boxes
/// [a v (x-delta), b ^ (y+eps)]. The tag collapses the one-sided limits that
/// continuity makes superfluous; Continuous reduces to delta(f, box).
double d_limit(const TaggedFunction& f, const Box& box, const LimitScheme& scheme = {});

/// Extract the induced atomic measure of a tagged grid field: one atom per
/// cell, placed at the upper-right node (right tag), lower-left node (left
/// tag), or cell midpoint (continuous tag), carrying the cell quasi-volume.
AtomicSignedMeasure extract_measure(const GridField& f);

/// Cumulative grid of an atomic measure: F(node) = sum of weights of atoms in
/// the lower-left orthant (inclusive for the right tag, exclusive for left).
GridField cumulative_grid(const AtomicSignedMeasure& m, const GridMesh& mesh,
                          ContinuityTag tag = ContinuityTag::RightContinuous);

/// Atoms projected onto the axes in I, weights merged at coinciding projections.
AtomicSignedMeasure marginal_measure(const AtomicSignedMeasure& m, SubsetIndex I);

/// Image measure under per-axis strictly increasing maps (weights preserved).
AtomicSignedMeasure pushforward(const AtomicSignedMeasure& m,
                                const std::vector<std::function<double(double)>>& maps,
                                BoxDomain target);

/// Midpoint-rule discretization of a density: one atom per cell at the cell
/// midpoint with weight rho(mid) * lambda(cell).
AtomicSignedMeasure measure_from_density(const std::function<double(std::span<const double>)>& rho,
                                         const GridMesh& mesh);

/// Jordan-type split of the grounded core at grid scale: cell masses of f
/// split by sign and accumulated. Both parts are grounded, right-continuous,
/// Delta-monotone grid fields with F^f = positive - negative at the nodes.
struct Decomposition {
  GridField positive_part;
  GridField negative_part;
};
Decomposition decompose(const GridField& f);

/// Finite-sample probe of the bounded-variation dichotomy: HK variation on
/// refining uniform meshes. "inducing" when the tail stabilizes (relative
/// growth < 1e-3), "diverging" when it grows by >= 1.5x per refinement at the
/// last two steps, else "inconclusive".
struct InducingReport {
  enum class Verdict { Inducing, Diverging, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::vector<int> levels;
  std::vector<double> hk_sequence;
};
InducingReport is_measure_inducing(const TaggedFunction& f, const std::vector<int>& levels);
InducingReport is_measure_inducing(const TaggedFunction& f, const std::vector<int>& levels,
                                   const Box& truncation);

std::string to_string(InducingReport::Verdict v);

/// Atom CSV interchange: header "# dims=d", then one "x1,...,xd,weight" line
/// per atom with 17 significant digits.
void write_atom_csv(std::ostream& os, const AtomicSignedMeasure& m);
AtomicSignedMeasure read_atom_csv(std::istream& is, BoxDomain enclosure);

}  // namespace stieltjes

#endif
