#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/algebroid/forms.hpp"
#include "algebroidkit/exactalg/poly_matrix.hpp"

namespace algebroidkit {

/// Polyvector field of degree p on Affine(n): Σ_I P_I ∂_I over strictly increasing p-tuples I,
/// component of I stored at tuple_rank(n, I).
struct PolyVectorField {
  std::size_t nvars = 0;
  std::size_t degree = 0;
  std::vector<Polynomial> components;

  static PolyVectorField zero(std::size_t nvars, std::size_t degree);
  static PolyVectorField function(std::size_t nvars, const Polynomial& f);
  /// Σ_μ v_μ ∂_μ.
  static PolyVectorField vector_field(const std::vector<Polynomial>& v);
  /// Σ_{μ<ν} M(μ,ν) ∂_μ∧∂_ν from a skew matrix. Throws PreconditionError when M is not skew.
  static PolyVectorField bivector(const PolyMatrix& M);

  /// Coefficient of ∂_{i_1}∧…∧∂_{i_p} for indices in any order (antisymmetric extension).
  Polynomial value(const IndexTuple& indices) const;
  Polynomial& at(const IndexTuple& increasing);
  bool is_zero() const;
  /// Full skew n × n matrix of a bivector.
  PolyMatrix matrix() const;

  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
};

/// P ∧ Q.
PolyVectorField wedge(const PolyVectorField& P, const PolyVectorField& Q);

/// Schouten–Nijenhuis bracket in odd coordinates θ_μ = ∂_μ:
/// [P,Q] = Σ_μ (P ∂⃖/∂θ_μ)(∂_μ Q) − (∂_μ P)(∂/∂θ_μ Q), right derivative on P, left on Q.
/// Degree p + q − 1; [v, f] = v(f) and [v, w] is the Lie bracket. Throws DimensionError on chart mismatch.
PolyVectorField schouten_bracket(const PolyVectorField& P, const PolyVectorField& Q);

}  // namespace algebroidkit
