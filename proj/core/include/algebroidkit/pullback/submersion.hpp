#pragma once

#include <cstddef>

#include "algebroidkit/exactalg/poly_matrix.hpp"

namespace algebroidkit {

/// Submersion f = π ∘ Φ : Affine(n+k) → Affine(n), where Φ is a polynomial automorphism given
/// together with its inverse and π forgets the last k coordinates.
struct SplitSubmersion {
  std::size_t n = 0;
  std::size_t k = 0;
  PolyMap phi;
  PolyMap phi_inv;

  /// Checks Φ∘Φ⁻¹ = id = Φ⁻¹∘Φ exactly; throws PreconditionError otherwise.
  static SplitSubmersion make(std::size_t n, std::size_t k, PolyMap phi, PolyMap phi_inv);
  /// Φ = id.
  static SplitSubmersion projection(std::size_t n, std::size_t k);

  std::size_t source_dim() const { return n + k; }
  /// f = π ∘ Φ.
  PolyMap map() const;

  friend bool operator==(const SplitSubmersion&, const SplitSubmersion&) = default;
};

/// outer ∘ inner, split by (Φ_outer × id_k_inner) ∘ Φ_inner.
SplitSubmersion compose(const SplitSubmersion& outer, const SplitSubmersion& inner);

/// Étale map with a supplied inverse Jacobian (J · J⁻¹ = id exactly).
struct EtaleMap {
  PolyMap map;
  PolyMatrix jacobian_inverse;

  friend bool operator==(const EtaleMap&, const EtaleMap&) = default;
};

/// Throws PreconditionError when J · J⁻¹ ≠ id or the map is not between equal dimensions.
void check_etale(const EtaleMap& e);

}  // namespace algebroidkit
