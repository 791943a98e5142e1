#pragma once

#include <map>
#include <optional>
#include <vector>

#include "algebroidkit/algebroid/cohomology.hpp"
#include "algebroidkit/groupoid/desk_groupoid.hpp"
#include "algebroidkit/poisson/schouten.hpp"

namespace algebroidkit {

struct PoissonCheck;

/// Bivector that passed verify_poisson; {f,g} = Π(df,dg) = Σ Π_{μν} ∂_μ f ∂_ν g.
class PoissonStructure {
 public:
  const PolyVectorField& bivector() const { return pi_; }
  std::size_t dim() const { return pi_.nvars; }
  Polynomial bracket(const Polynomial& f, const Polynomial& g) const;

  friend bool operator==(const PoissonStructure&, const PoissonStructure&) = default;

 private:
  explicit PoissonStructure(PolyVectorField pi) : pi_(std::move(pi)) {}
  PolyVectorField pi_;
  friend PoissonCheck verify_poisson(const PolyVectorField& pi);
};

struct PoissonCheck {
  std::optional<PoissonStructure> structure;
  /// Witnesses are components of [Π,Π]; the coordinate Jacobi identity is checked as well.
  Verdict verdict;
  PolyVectorField schouten_square;
};

/// [Π,Π] = 0, and independently {x_i,{x_j,x_k}} + cyclic = 0 on all coordinate triples; the two
/// must agree. Throws DimensionError unless Π has degree 2.
PoissonCheck verify_poisson(const PolyVectorField& pi);

/// Frame dx_0..dx_{n−1}: anchor a(dx_i) = Σ_ν Π_{iν} ∂_ν, brackets [dx_i, dx_j] = d Π_{ij}.
AlgebroidPresentation cotangent_algebroid(const PoissonStructure& P);

/// Fibrewise-linear Poisson structure on A* with coordinates (x_0..x_{n−1}, p_0..p_{r−1}), p_i the
/// linear function of e_i: {p_i,p_j} = Σ_k c^k_ij p_k, {p_i, x_μ} = a(e_i)(x_μ), {x_μ,x_ν} = 0.
/// Throws PreconditionError when A is invalid or not on one chart.
PoissonStructure linear_poisson_on_dual(const AlgebroidPresentation& A);

/// g_*Π = Π for every g: J_g Π(x) J_gᵀ = Π(g·x). Throws DimensionError on chart mismatch.
Verdict check_invariant_poisson(const PoissonStructure& P, const DeskGroupoid& G);

struct SymplecticResult {
  PoissonStructure poisson;
  /// Anchor isomorphism T*_Π → TX with inverse −ω, both checked as algebroid morphisms, and the
  /// cochain isomorphism of graded de Rham complexes.
  Verdict certificate;
  std::map<int, std::vector<std::size_t>> cotangent_betti;
  std::map<int, std::vector<std::size_t>> tangent_betti;
};

/// ω given by its skew matrix W_{μν} = ω(∂_μ, ∂_ν) with a supplied polynomial inverse. Π = −W⁻¹,
/// so dx∧dy ↦ ∂x∧∂y. Transport uses the total grading up to `cap`. Throws PreconditionError when
/// W is not skew, dω ≠ 0, or W·inverse ≠ 1; GradingError when the grading is inadmissible.
SymplecticResult symplectic_to_poisson(const PolyMatrix& omega, const PolyMatrix& omega_inverse, int cap);

}  // namespace algebroidkit
