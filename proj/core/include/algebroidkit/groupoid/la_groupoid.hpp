#pragma once

#include <vector>

#include "algebroidkit/groupoid/groupoid_algebroid.hpp"

namespace algebroidkit {

/// Groupoid object Ω ⇉ A in algebroids over the desk groupoid G ⇉ X. Ω lives over the arrow space;
/// Ω₂ = Ω ×_A Ω lives over the pair space, with component (g,h) framed by the second factor.
struct LAGroupoid {
  DeskGroupoid groupoid;
  AlgebroidPresentation omega;
  AlgebroidPresentation base;
  AlgebroidPresentation omega2;
  AlgebroidMorphism s;    // Ω → A over s
  AlgebroidMorphism t;    // Ω → A over t
  AlgebroidMorphism u;    // A → Ω over u
  AlgebroidMorphism i;    // Ω → Ω over i
  AlgebroidMorphism m;    // Ω₂ → Ω over m
  AlgebroidMorphism pr1;  // Ω₂ → Ω, first factor
  AlgebroidMorphism pr2;  // Ω₂ → Ω, second factor
};

/// Structure maps are morphisms over the groupoid's structure maps; groupoid axioms for Ω ⇉ A hold;
/// the anchors form a morphism into the tangent groupoid.
Verdict verify_la_groupoid(const LAGroupoid& L);

/// TG ⋉ A with Ω = s^!A: s̃(v,ξ) = ξ, t̃(v,ξ) = ψ̃(v,ξ), ũ(ξ) = (u_*a(ξ), ξ), ĩ(v,ξ) = (i_*v, ψ̃(v,ξ)),
/// m̃ = (m_*(v,v′), ξ). Throws PreconditionError when GA fails verification.
LAGroupoid build_la_groupoid(const GroupoidAlgebroid& GA);

/// Invertibility of (ã, s̃): Ω → s^!A on every arrow component.
Verdict check_bang_vacant(const LAGroupoid& L);
/// Invertibility of (π̃, s̃): Ω → s^*A on every arrow component.
Verdict check_vacant(const LAGroupoid& L);

/// Per arrow component, the matrix of (ã, s̃) in the frame (a(e_p), e_p) of s^!A.
std::vector<PolyMatrix> bang_comparison(const LAGroupoid& L);

/// ψ_g = (ã,s̃)⁻¹ followed by t̃. Throws PreconditionError when L is not !-vacant.
GroupoidAlgebroid f2_recover(const LAGroupoid& L);

/// Base-preserving morphism of LA-groupoids over the same desk groupoid.
struct LAMorphism {
  LAGroupoid source;
  LAGroupoid target;
  AlgebroidMorphism omega_map;  // Ω → Ω′ over the identity of the arrow space
  AlgebroidMorphism base_map;   // A → A′ over the identity of X
};
/// Both components are algebroid morphisms and commute with s̃, t̃, ũ, ĩ, m̃.
Verdict check_la_morphism(const LAMorphism& m);

LAMorphism f1_morphism(const EquivariantMorphism& rho);
EquivariantMorphism f2_morphism(const LAMorphism& m);

/// ((ã,s̃), id): L → build_la_groupoid(f2_recover(L)).
LAMorphism unit_iso(const LAGroupoid& L);

}  // namespace algebroidkit
