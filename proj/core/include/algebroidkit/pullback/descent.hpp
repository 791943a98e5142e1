#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/pullback/pullback.hpp"

namespace algebroidkit {

/// Chart U_ij of an open cover with affine inclusions into U_i and U_j, carrying the transition
/// θ_ij: A_j|U_ij → A_i|U_ij as a rank_j × rank_i matrix over U_ij.
struct CoverOverlap {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t dim = 0;
  PolyMap to_i;
  PolyMap to_j;
  PolyMatrix theta;

  friend bool operator==(const CoverOverlap&, const CoverOverlap&) = default;
};

/// Chart U_ijk with maps into the overlap charts U_ij, U_jk, U_ik. For a repeated index (i = j,
/// say) the corresponding map lands in U_i itself and the transition is the identity.
struct CoverTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::size_t dim = 0;
  PolyMap to_ij;
  PolyMap to_jk;
  PolyMap to_ik;

  friend bool operator==(const CoverTriple&, const CoverTriple&) = default;
};

struct CoverDatum {
  std::vector<AlgebroidPresentation> charts;
  std::vector<CoverOverlap> overlaps;
  /// When empty, the triples (i,j,i) are derived from overlaps stored on the same chart in both orders.
  std::vector<CoverTriple> triples;

  friend bool operator==(const CoverDatum&, const CoverDatum&) = default;
};

/// (A, ψ) with A over X and ψ: s^!A → t^!A over X×_Y X = Affine(n+2k), coordinates (y, u, u′),
/// s(y,u,u′) = Φ⁻¹(y,u) and t(y,u,u′) = Φ⁻¹(y,u′). ψ is a square matrix in the frames of
/// pullback_algebroid(s, A) and pullback_algebroid(t, A).
struct SubmersionDatum {
  SplitSubmersion phi;
  AlgebroidPresentation algebroid;
  PolyMatrix psi;

  friend bool operator==(const SubmersionDatum&, const SubmersionDatum&) = default;
};

/// Source and target projections X×_Y X → X in split form.
struct FibreSquare {
  SplitSubmersion s;
  SplitSubmersion t;
};
FibreSquare fibre_square(const SplitSubmersion& phi);

/// Projections X×_Y X×_Y X → X×_Y X in split form, on coordinates (y, u1, u2, u3):
/// pr2 ↦ (y,u1,u2), pr1 ↦ (y,u2,u3), m ↦ (y,u1,u3).
struct FibreTriple {
  SplitSubmersion pr1;
  SplitSubmersion pr2;
  SplitSubmersion m;
};
FibreTriple fibre_triple(const SplitSubmersion& phi);

/// Cocycle verdict for a cover. Throws PreconditionError on missing or inconsistent overlap data
/// and on non-invertible inclusions.
Verdict verify_descent(const CoverDatum& D);

/// Verdict for (A, ψ): ψ is an invertible morphism and the cocycle holds with the composition
/// isomorphisms (and canonical reframes where split forms differ) interleaved.
Verdict verify_descent(const SubmersionDatum& D);

/// Restriction of a chart algebroid along an invertible affine inclusion.
AlgebroidPresentation restrict_to(const AlgebroidPresentation& A, const PolyMap& inclusion);

/// On U_ij the glued algebroid is presented in the frame of chart min(i,j); psi_i and psi_j are the
/// normalizing isomorphisms into A_i and A_j, with ψ_i ψ_j⁻¹ = θ_ij.
struct OverlapNormalizer {
  std::size_t overlap = 0;
  PolyMatrix psi_i;
  PolyMatrix psi_j;
};
struct GluedAtlas {
  CoverDatum cover;
  std::vector<OverlapNormalizer> normalizers;
  Verdict verdict;
};
/// Verifies the cover and attaches the normalizing isomorphisms. Throws PreconditionError when the
/// cocycle fails.
GluedAtlas glue_cover(const CoverDatum& D);

/// (φ^!B, ψ_can) with ψ_can = c_{φ,t} ∘ reframe ∘ c_{φ,s}⁻¹.
SubmersionDatum canonical_descent_datum(const SplitSubmersion& phi, const AlgebroidPresentation& B);

struct DescentResult {
  TransversePullback descended;  // σ^!A over Y
  AlgebroidMorphism sigma;       // Σ: φ^!σ^!A → A over the identity of X
  Verdict verdict;               // Σ is an invertible morphism and the descent square commutes
};

/// Descends (A, ψ) along a polynomial section σ of φ. Throws PreconditionError when σ is not a
/// section or the datum fails verification, ConstructionError when the kernel frame does not exist.
DescentResult descend_along_section(const SubmersionDatum& D, const PolyMap& section);

/// σ^!φ^!B → B, (w, ξ) ↦ A-component of ξ, for the round trip of a pulled-back algebroid.
AlgebroidMorphism section_roundtrip(const Pullback& P, const TransversePullback& T);

}  // namespace algebroidkit
