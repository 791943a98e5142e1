#include "algebroidkit/exactalg/rat_matrix.hpp"

#include <utility>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DimensionError("column has wrong length");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatVector RatMatrix::apply(const RatVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  RatVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
  RatMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& y = b.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum size mismatch");
  RatMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference size mismatch");
  RatMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

namespace {

/// Row echelon form with integer entries produced by Bareiss' fraction-free elimination.
struct IntegerEchelon {
  std::vector<std::vector<mpz_class>> rows;  // first `pivots.size()` rows are the nonzero ones
  std::vector<std::size_t> pivots;           // pivot column of each nonzero row
};

IntegerEchelon bareiss_echelon(const RatMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntegerEchelon out;
  out.rows.assign(R, std::vector<mpz_class>(C));
  // Clear denominators row by row; scaling a row does not change the row space.
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j) {
      const mpz_class d = m.at(i, j).denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < C; ++j) {
      const mpq_class& q = m.at(i, j).value();
      out.rows[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  auto& a = out.rows;
  mpz_class prev = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < C && k < R; ++c) {
    std::size_t p = k;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    if (p != k) std::swap(a[p], a[k]);
    for (std::size_t i = k + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        a[i][j] = a[k][c] * a[i][j] - a[i][c] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[k][c];
    out.pivots.push_back(c);
    ++k;
  }
  return out;
}

}  // namespace

std::size_t rank(const RatMatrix& m) { return bareiss_echelon(m).pivots.size(); }

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  const std::size_t C = m.cols();
  IntegerEchelon e = bareiss_echelon(m);
  std::vector<bool> is_pivot(C, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(C);
    x[f] = Rational(1);
    for (std::size_t r = e.pivots.size(); r-- > 0;) {
      const std::size_t pc = e.pivots[r];
      mpq_class s = 0;
      for (std::size_t j = pc + 1; j < C; ++j) {
        if (e.rows[r][j] != 0 && !x[j].is_zero()) s += mpq_class(e.rows[r][j]) * x[j].value();
      }
      x[pc] = Rational(mpq_class(-s / mpq_class(e.rows[r][pc])));
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row counts differ");
  const std::size_t R = a.rows(), C = a.cols(), B = b.cols();
  // Gauss-Jordan on the augmented matrix [a | b].
  std::vector<RatVector> m(R, RatVector(C + B));
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) m[i][j] = a.at(i, j);
    for (std::size_t j = 0; j < B; ++j) m[i][C + j] = b.at(i, j);
  }
  std::vector<std::size_t> pivots;
  std::size_t k = 0;
  for (std::size_t c = 0; c < C && k < R; ++c) {
    std::size_t p = k;
    while (p < R && m[p][c].is_zero()) ++p;
    if (p == R) continue;
    std::swap(m[p], m[k]);
    const Rational inv = m[k][c].inverse();
    for (auto& x : m[k]) x *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == k || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < C + B; ++j) {
        if (!m[k][j].is_zero()) m[i][j] -= f * m[k][j];
      }
    }
    pivots.push_back(c);
    ++k;
  }
  for (std::size_t i = k; i < R; ++i)
    for (std::size_t j = 0; j < B; ++j)
      if (!m[i][C + j].is_zero()) return std::nullopt;
  RatMatrix x(C, B);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < B; ++j) x.at(pivots[r], j) = m[r][C + j];
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, RatMatrix::identity(m.rows()));
}

}  // namespace algebroidkit
