#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algebroidkit/exactalg/rational.hpp"

namespace algebroidkit {

using RatVector = std::vector<Rational>;

/// Dense matrix over the rationals, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols = 0);
  /// Matrix whose columns are the given vectors, each of length `rows`.
  static RatMatrix from_columns(const std::vector<RatVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  RatVector row(std::size_t i) const;
  RatVector column(std::size_t j) const;

  bool is_zero() const;
  RatMatrix transpose() const;
  RatVector apply(const RatVector& v) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Exact rank via fraction-free elimination.
std::size_t rank(const RatMatrix& m);

/// Basis of {v : m·v = 0}; exactly cols − rank vectors, one per free column of the echelon form.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Some X with a·X = b, or nothing when the system is inconsistent.
std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b);

/// Two-sided inverse of a square matrix, or nothing when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

}  // namespace algebroidkit
