#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/algebroid/morphism.hpp"
#include "algebroidkit/groupoid/desk_groupoid.hpp"

namespace algebroidkit {

/// Algebroid A over the object chart with arrow-wise isomorphisms ψ_g(x): A_x → A_{g·x}, stored in
/// row convention: e_p(x) ↦ Σ_q ψ_g(p,q)(x) e_q(g·x).
struct GroupoidAlgebroid {
  DeskGroupoid groupoid;
  AlgebroidPresentation algebroid;
  std::vector<PolyMatrix> psi;

  friend bool operator==(const GroupoidAlgebroid&, const GroupoidAlgebroid&) = default;
};

/// The étale pullback t_g^*A along x ↦ g·x.
AlgebroidPresentation translate(const AlgebroidPresentation& A, const DeskGroupoid& G, std::size_t g);

/// ψ_g as a morphism A → t_g^*A over the identity.
AlgebroidMorphism arrow_morphism(const GroupoidAlgebroid& GA, std::size_t g);

/// Cocycle form: each ψ_g is an invertible algebroid morphism A → t_g^*A, and
/// ψ_{gh}(x) = ψ_h(x) · ψ_g(h·x). The certificate also records that the sheaf form agrees.
/// Throws DimensionError on shape mismatch.
Verdict verify_groupoid_algebroid(const GroupoidAlgebroid& GA);

/// Sheaf form: G acts on local sections by (g·σ)(x′) = σ(g⁻¹x′)·ψ_g(g⁻¹x′); the anchor is
/// equivariant, the action preserves brackets of frame sections, and g·(h·σ) = (gh)·σ.
Verdict verify_groupoid_sheaf(const GroupoidAlgebroid& GA);

/// Desk form of the tangent action TG ×_a A → A: on the arrow g, the pair (v, ξ) with v = a(ξ) is
/// sent to ψ_g ξ. maps[g] is (dim + rank) × rank acting on row vectors (v, ξ).
struct TangentAction {
  GroupoidAlgebroid source;
  std::vector<PolyMatrix> maps;
};
/// Throws PreconditionError when GA fails verification.
TangentAction action_from_cocycle(const GroupoidAlgebroid& GA);
/// Action law ψ̃(m_*(v,w), ξ) = ψ̃(v, ψ̃(w, ξ)) on frame pairs, with the anchor constraint on
/// the intermediate pair checked as well.
Verdict verify_action_law(const TangentAction& T);
/// ψ_g(ξ) = ψ̃_g(a(ξ), ξ).
std::vector<PolyMatrix> cocycle_from_action(const TangentAction& T);

/// Base-preserving ρ: A → A′ with ρ(x) ψ′_g(x) = ψ_g(x) ρ(g·x).
struct EquivariantMorphism {
  GroupoidAlgebroid source;
  GroupoidAlgebroid target;
  PolyMatrix rho;
};
Verdict check_equivariant(const EquivariantMorphism& m);

}  // namespace algebroidkit
