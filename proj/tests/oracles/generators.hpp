#pragma once
// Random instance generators shared by unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "algebroidkit/algebroid/presentation.hpp"
#include "algebroidkit/groupoid/groupoid_algebroid.hpp"
#include "algebroidkit/pullback/submersion.hpp"

namespace gen {

using Rng = std::mt19937;

algebroidkit::Polynomial random_poly(Rng& rng, std::size_t nvars, unsigned max_deg, int terms, int coeff = 3);

/// Unitriangular-times-permutation frame change with polynomial entries of degree ≤ max_deg.
algebroidkit::PolyMatrix random_unimodular(Rng& rng, std::size_t r, std::size_t nvars, unsigned max_deg);

/// Valid algebroid over a single chart with dim ≤ max_dim and rank ≤ max_rank, built from known
/// families (tangent, Lie algebras, trivial transitive, rank one, linear actions) and then
/// rewritten in a random polynomial frame.
algebroidkit::AlgebroidPresentation random_valid_algebroid(Rng& rng, std::size_t max_dim, std::size_t max_rank);

/// Polynomial automorphism of Affine(n) with its inverse, built from shears and scalings.
std::pair<algebroidkit::PolyMap, algebroidkit::PolyMap> random_automorphism(Rng& rng, std::size_t n, unsigned max_deg);

/// Split submersion Affine(n+k) → Affine(n) with a random Φ.
algebroidkit::SplitSubmersion random_split_submersion(Rng& rng, std::size_t n, std::size_t k, unsigned max_deg);

/// Section y ↦ Φ⁻¹(y, g(y)) with random polynomial g.
algebroidkit::PolyMap random_section(Rng& rng, const algebroidkit::SplitSubmersion& f, unsigned max_deg);

/// Closure of affine generators of a finite group acting on Affine(dim).
algebroidkit::DeskGroupoid generate_group(const std::vector<algebroidkit::PolyMap>& generators, std::size_t dim);

/// ℤ/2 by x ↦ −x, ℤ/2 by x ↦ 1 − x, ℤ/2×ℤ/2 by sign flips, ℤ/3 and S3 by integer matrices on Affine(2).
std::vector<algebroidkit::DeskGroupoid> sample_groupoids();

/// Valid groupoid algebroid from equivariant families (tangent, Lie algebras with automorphisms,
/// odd linear actions, rank one), twisted by a random frame change.
algebroidkit::GroupoidAlgebroid random_groupoid_algebroid(Rng& rng);

/// Groupoid algebroid whose d_A and translations preserve the named grading preset, for Čech
/// computations: |G| ≤ 4 acting linearly, constant ψ, homogeneous structure functions.
struct GradedGroupoidAlgebroid {
  algebroidkit::GroupoidAlgebroid ga;
  std::string grading;
};
GradedGroupoidAlgebroid random_graded_groupoid_algebroid(Rng& rng);

/// Skew matrix with random polynomial entries on Affine(n).
algebroidkit::PolyMatrix random_skew(Rng& rng, std::size_t n, unsigned max_deg);

/// Π_{ij} = f ε_{ijk} ∂_k φ on Affine(3) for random f, φ; always Poisson.
algebroidkit::PolyMatrix random_nambu(Rng& rng, unsigned max_deg);

/// Perturbs one entry of one ψ_g.
algebroidkit::GroupoidAlgebroid corrupt(Rng& rng, const algebroidkit::GroupoidAlgebroid& GA);

/// Perturbs one structure function or anchor entry.
algebroidkit::AlgebroidPresentation corrupt(Rng& rng, const algebroidkit::AlgebroidPresentation& A);

/// Split sl2: [h,e]=2e, [h,f]=−2f, [e,f]=h.
algebroidkit::AlgebroidPresentation split_sl2();
/// Cyclic sl2-type constants [e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e1.
algebroidkit::AlgebroidPresentation cyclic_sl2();
algebroidkit::AlgebroidPresentation heisenberg();
/// [e0,e1] = e1.
algebroidkit::AlgebroidPresentation affine_line_algebra();

}  // namespace gen
