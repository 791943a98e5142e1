#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "algebroidkit/algebroid/chart.hpp"
#include "algebroidkit/exactalg/poly_matrix.hpp"
#include "algebroidkit/verdict.hpp"

namespace algebroidkit {

/// Section of a trivialized bundle: one coefficient per frame element.
using Section = std::vector<Polynomial>;

/// Structure functions c^k_{ij} of [e_i, e_j] = Σ_k c^k_{ij} e_k. Only i < j is stored; the rest
/// follows from antisymmetry, and c^k_{ii} = 0.
class StructureFunctions {
 public:
  StructureFunctions() = default;
  StructureFunctions(std::size_t rank, std::size_t nvars);

  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return nvars_; }
  /// c^k_{ij} with the antisymmetric extension.
  Polynomial operator()(std::size_t i, std::size_t j, std::size_t k) const;
  /// Sets c^k_{ij} (and hence c^k_{ji} = −value). i == j is rejected unless value is zero.
  void set(std::size_t i, std::size_t j, std::size_t k, Polynomial value);
  /// Coefficient vector of [e_i, e_j].
  Section bracket_of_frames(std::size_t i, std::size_t j) const;

  friend bool operator==(const StructureFunctions&, const StructureFunctions&) = default;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::size_t rank_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Polynomial> data_;  // [pair(i<j)][k]
};

/// Anchor and brackets of an algebroid over one affine chart in a chosen frame e_1..e_r.
struct LocalStructure {
  /// r × n: row i holds the coordinate components of a(e_i).
  PolyMatrix anchor;
  StructureFunctions bracket;

  LocalStructure() = default;
  LocalStructure(std::size_t rank, std::size_t dim);

  std::size_t rank() const { return anchor.rows(); }
  std::size_t dim() const { return anchor.cols(); }

  /// a(e_i)(f).
  Polynomial anchor_apply(std::size_t i, const Polynomial& f) const;
  /// a(s)(f) for a section s.
  Polynomial anchor_apply(const Section& s, const Polynomial& f) const;
  /// Coordinate components of a(s).
  std::vector<Polynomial> anchor_of(const Section& s) const;
  /// Bracket of sections extended from the frame by the Leibniz rule.
  Section bracket_of(const Section& s, const Section& t) const;
  Section frame_section(std::size_t i) const;

  friend bool operator==(const LocalStructure&, const LocalStructure&) = default;
};

/// Finitely presented algebroid: base, rank, and a local structure per base component.
struct AlgebroidPresentation {
  ChartBase base;
  std::size_t rank = 0;
  std::vector<LocalStructure> pieces;

  /// Zero anchor and zero brackets on every component.
  static AlgebroidPresentation zero(const ChartBase& base, std::size_t rank);
  /// Wraps a single local structure over Point (dim 0) or Affine(dim).
  static AlgebroidPresentation single(LocalStructure local);

  const LocalStructure& local(std::size_t component = 0) const { return pieces.at(component); }
  LocalStructure& local(std::size_t component = 0) { return pieces.at(component); }
  /// Throws DimensionError when piece shapes do not fit the base and rank.
  void check_shapes() const;

  friend bool operator==(const AlgebroidPresentation&, const AlgebroidPresentation&) = default;
};

/// Names used in witnesses, all 0-based: x0.. for coordinates, e0.. for frames, e^0.. for coframes.
std::string coordinate_name(std::size_t mu);
std::string frame_name(std::size_t i);
std::string coframe_name(std::size_t i);

}  // namespace algebroidkit
