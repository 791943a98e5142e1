#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algebroidkit/algebroid/presentation.hpp"

namespace algebroidkit {

/// φ(e_i) written as Σ_t g_{i,t} ⊗ ξ'_{i,t}: functions g on the source chart and sections ξ' of the
/// target, given in the target frame over the target chart.
struct TensorTerm {
  Polynomial g;
  Section xi;

  friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};
using Decomposition = std::vector<std::vector<TensorTerm>>;  // one list per source frame element

/// The part of a morphism living over one source component.
struct MorphismPiece {
  std::size_t source_component = 0;
  std::size_t target_component = 0;
  /// Base map, source chart -> target chart.
  PolyMap base_map;
  /// rank(source) × rank(target) over the source chart: φ(e_i) = Σ_p matrix(i,p) · f*e'_p.
  PolyMatrix matrix;
  /// Optional decomposition used verbatim by the bracket check.
  std::optional<Decomposition> decomposition;

  friend bool operator==(const MorphismPiece&, const MorphismPiece&) = default;
};

/// Morphism of algebroids, possibly changing the base.
struct AlgebroidMorphism {
  AlgebroidPresentation source;
  AlgebroidPresentation target;
  std::vector<MorphismPiece> pieces;  // exactly one per source component

  friend bool operator==(const AlgebroidMorphism&, const AlgebroidMorphism&) = default;
};

/// Frame matrix Σ_t g_{i,t} f*(ξ'_{i,t}) of a decomposition.
PolyMatrix decomposition_matrix(const Decomposition& d, const PolyMap& base_map, std::size_t target_rank);

/// Exact check of the anchor square and of the bracket identity
/// φ[e_i,e_j] = Σ g h ⊗ [ξ',ν'] + Σ e_i(h) ⊗ ν' − Σ e_j(g) ⊗ ξ' on every pair of frame elements.
/// Throws DimensionError on chart or arity mismatch.
Verdict check_morphism(const AlgebroidMorphism& m);

/// Identity morphism of a presentation.
AlgebroidMorphism identity_morphism(const AlgebroidPresentation& A);

/// The anchor as a morphism into the tangent algebroid of the same base.
AlgebroidMorphism anchor_morphism(const AlgebroidPresentation& A);

/// second ∘ first. Decompositions are not carried over.
AlgebroidMorphism compose(const AlgebroidMorphism& second, const AlgebroidMorphism& first);

/// Frame matrices of two morphisms agree entry by entry (bases and components included).
bool same_map(const AlgebroidMorphism& a, const AlgebroidMorphism& b);

/// Rewrites a local structure in the frame e'_i = Σ_p P(i,p) e_p. P must have a polynomial inverse.
LocalStructure change_frame(const LocalStructure& A, const PolyMatrix& P);

/// Inverse of a base-preserving isomorphism whose base maps are invertible substitutions with the
/// supplied inverses; frame matrices must have polynomial inverses. Throws PreconditionError.
AlgebroidMorphism invert(const AlgebroidMorphism& m, const std::vector<PolyMap>& base_inverses);

/// Inverse of a base-preserving isomorphism over identity base maps.
AlgebroidMorphism invert(const AlgebroidMorphism& m);

}  // namespace algebroidkit
