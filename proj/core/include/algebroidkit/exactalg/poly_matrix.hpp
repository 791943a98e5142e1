#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algebroidkit/exactalg/polynomial.hpp"

namespace algebroidkit {

class PolyMatrix;

/// Polynomial map Affine(source_dim) -> Affine(images.size()).
struct PolyMap {
  std::size_t source_dim = 0;
  std::vector<Polynomial> images;

  static PolyMap identity(std::size_t n);
  /// Map into the point chart.
  static PolyMap to_point(std::size_t source_dim) { return PolyMap{source_dim, {}}; }
  /// Coordinate projection picking the listed source coordinates in order.
  static PolyMap projection(std::size_t source_dim, const std::vector<std::size_t>& picks);
  /// x ↦ L·x + o for a square rational matrix.
  static PolyMap affine(const std::vector<std::vector<Rational>>& matrix, const std::vector<Rational>& offset);

  std::size_t target_dim() const { return images.size(); }
  /// f ∘ this.
  Polynomial pull(const Polynomial& f) const;
  /// this ∘ inner.
  PolyMap after(const PolyMap& inner) const;
  /// Jacobian matrix, target_dim × source_dim, entries on the source chart.
  PolyMatrix jacobian() const;
  bool is_identity() const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;
};

/// Dense matrix of polynomials on a common chart.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix identity(std::size_t n, std::size_t nvars);
  static PolyMatrix constant(const std::vector<std::vector<Rational>>& rows, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  Polynomial& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;
  PolyMatrix transpose() const;
  /// Entry-wise pullback along a map whose target chart is this matrix's chart.
  PolyMatrix pull(const PolyMap& map) const;
  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMatrix derive(std::size_t axis) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& m);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Polynomial> a_;
};

/// Block matrix [a | b].
PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b);
/// Block matrix [a ; b].
PolyMatrix vconcat(const PolyMatrix& a, const PolyMatrix& b);

/// Determinant by Bareiss elimination with exact polynomial division.
Polynomial determinant(const PolyMatrix& m);

/// Rank over the field of rational functions.
std::size_t generic_rank(const PolyMatrix& m);

/// Inverse with polynomial entries, available exactly when the determinant is a nonzero constant.
std::optional<PolyMatrix> unit_inverse(const PolyMatrix& m);

/// First set of rows() columns (lexicographic search) whose square minor has a nonzero constant
/// determinant. Requires rows() <= cols().
std::optional<std::vector<std::size_t>> unit_minor_columns(const PolyMatrix& m);

/// Polynomial frame of {v : m·v = 0} built from a unit minor of m. Columns of the result are the
/// frame vectors; there are cols − rows of them. Nothing when no unit minor exists.
std::optional<PolyMatrix> unit_kernel_frame(const PolyMatrix& m);

/// Z with Z·m = v, found through a unit minor on the columns of m and checked exactly.
std::optional<PolyMatrix> solve_rows(const PolyMatrix& m, const PolyMatrix& v);

}  // namespace algebroidkit
