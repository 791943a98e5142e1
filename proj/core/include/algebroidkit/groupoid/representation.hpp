#pragma once

#include <optional>
#include <vector>

#include "algebroidkit/algebroid/representation.hpp"
#include "algebroidkit/groupoid/groupoid_algebroid.hpp"

namespace algebroidkit {

/// Flat A-connection on a trivial bundle E together with arrow-wise fibre isomorphisms
/// ψ^E_g(x): E_x → E_{g·x} in row convention.
struct GroupoidRepresentation {
  GroupoidAlgebroid parent;
  RepresentationPresentation rep;
  std::vector<PolyMatrix> psi_e;
};

struct GroupoidRepVerdict {
  Verdict verdict;
  /// Present when A = 0 over the point: whether g ↦ (ψ^E_g)ᵀ is a group homomorphism G → GL(E).
  std::optional<bool> group_representation;
};

/// Valid iff ∇ is flat, ψ^E is invertible and satisfies ψ^E_gh(x) = ψ^E_h(x)·ψ^E_g(h·x), and
/// ψ^E intertwines ∇ with its translate along ψ: ψ^E_g(∇_ξ σ) = ∇_{ψ_g ξ}(ψ^E_g σ).
/// Throws DimensionError on shape mismatch, PreconditionError when the parent fails verification.
GroupoidRepVerdict verify_groupoid_rep(const GroupoidRepresentation& R);

}  // namespace algebroidkit
