#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/algebroid/morphism.hpp"
#include "algebroidkit/algebroid/representation.hpp"
#include "algebroidkit/pullback/submersion.hpp"

namespace algebroidkit {

/// f^!A over the source of f, in the frame (V_1..V_k, E_1..E_r): V_j are the vertical fields
/// ∂/∂u_j of the split coordinates, E_p = (Σ_i f*(b_p^i) ∂/∂y_i, e_p).
struct Pullback {
  SplitSubmersion f;
  AlgebroidPresentation base;  // A over Affine(n)
  AlgebroidPresentation algebroid;
  /// (k+r) × r over the source: the A-component of each frame element (V_j ↦ 0, E_p ↦ e_p).
  PolyMatrix to_base;

  friend bool operator==(const Pullback&, const Pullback&) = default;
};

/// Builds f^!A. A must be valid over a single chart of dimension f.n.
Pullback pullback_algebroid(const SplitSubmersion& f, const AlgebroidPresentation& A);

/// The canonical morphism f^!A → A covering f.
AlgebroidMorphism pullback_projection(const Pullback& P);

/// Coordinates in the frame of P (pulled back along g: W → source of P) of the pair (v, ξ), where
/// v lists the components of a tangent vector of the source of P and ξ the A-coefficients, all as
/// functions on W. Throws PreconditionError when f_*v ≠ a(ξ).
Section pullback_coordinates(const Pullback& P, const PolyMap& g, const std::vector<Polynomial>& v, const Section& xi);

/// f^!ρ for a morphism ρ: A → B over the identity of the base: (v, ξ) ↦ (v, ρξ).
AlgebroidMorphism pullback_morphism(const SplitSubmersion& f, const AlgebroidMorphism& rho);

/// Identity-on-pairs isomorphism between two pullback presentations of the same map and algebroid
/// that use different split forms.
AlgebroidMorphism canonical_reframe(const Pullback& from, const Pullback& to);

/// Étale pullback: anchor J⁻¹·φ*(a), brackets φ*(c).
AlgebroidPresentation etale_pullback(const EtaleMap& phi, const AlgebroidPresentation& A);

/// Frame isomorphism between pullback_algebroid and etale_pullback for the same map with k = 0.
AlgebroidMorphism etale_comparison(const Pullback& P, const EtaleMap& phi);

struct FactorResult {
  AlgebroidMorphism morphism;
  /// Generic rank of the vertical anchor block; equal to k exactly when the factorization is unique.
  std::size_t vertical_rank = 0;
  bool unique = false;
};

/// Factors ψ̃: C → A covering ψ = f∘ψ′ through f^!A: ψ̃′(ξ) = (ψ′_* a_C(ξ), ψ̃(ξ)). ψ̃ must have a
/// single piece. Throws PreconditionError when ψ ≠ f∘ψ′ or the anchor square of ψ̃ fails.
FactorResult factor_through_pullback(const AlgebroidMorphism& psi_tilde, const Pullback& P, const PolyMap& psi_prime);

/// c_{φ₂,φ₁}(A): (φ₂φ₁)^!A → φ₁^!φ₂^!A, (v,w) ↦ (v, ((φ₁)_*v, w)).
struct CompositionIso {
  Pullback composite;  // (φ₂φ₁)^!A
  Pullback inner;      // φ₂^!A
  Pullback outer;      // φ₁^!(φ₂^!A)
  AlgebroidMorphism iso;
};
CompositionIso composition_iso(const SplitSubmersion& phi1, const SplitSubmersion& phi2, const AlgebroidPresentation& A);

/// Both composites (φ₃φ₂φ₁)^!A → φ₁^!φ₂^!φ₃^!A of the coherence pentagon, and whether they agree.
struct PentagonResult {
  AlgebroidMorphism left;   // φ₁^!(c_{φ₃,φ₂}) ∘ c_{φ₃φ₂,φ₁}
  AlgebroidMorphism right;  // c_{φ₂,φ₁}(φ₃^!A) ∘ c_{φ₃,φ₂φ₁}
  bool agree = false;
  Verdict verdict;
};
PentagonResult pentagon(const SplitSubmersion& phi1, const SplitSubmersion& phi2, const SplitSubmersion& phi3,
                        const AlgebroidPresentation& A);

/// f^!∇: zero on the vertical frame, f*Γ on E_p.
RepresentationPresentation pullback_representation(const SplitSubmersion& f, const RepresentationPresentation& R);

/// Pullback along an arbitrary polynomial map g: W → X transverse to the anchor of A, built from
/// a polynomial kernel frame of [J_g | −g*(a)ᵀ]. Throws ConstructionError when no unit minor exists.
struct TransversePullback {
  PolyMap g;
  AlgebroidPresentation base;
  AlgebroidPresentation algebroid;
  /// rank × (dim W + rank A): each frame element as the pair (v, ξ).
  PolyMatrix frame;
};
TransversePullback transverse_pullback(const PolyMap& g, const AlgebroidPresentation& A);

}  // namespace algebroidkit
