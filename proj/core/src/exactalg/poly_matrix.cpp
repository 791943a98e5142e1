#include "algebroidkit/exactalg/poly_matrix.hpp"

#include <algorithm>
#include <utility>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

PolyMap PolyMap::identity(std::size_t n) {
  PolyMap m{n, {}};
  for (std::size_t i = 0; i < n; ++i) m.images.push_back(Polynomial::variable(n, i));
  return m;
}

PolyMap PolyMap::projection(std::size_t source_dim, const std::vector<std::size_t>& picks) {
  PolyMap m{source_dim, {}};
  for (std::size_t i : picks) m.images.push_back(Polynomial::variable(source_dim, i));
  return m;
}

PolyMap PolyMap::affine(const std::vector<std::vector<Rational>>& matrix, const std::vector<Rational>& offset) {
  const std::size_t n = offset.size();
  if (matrix.size() != n) throw DimensionError("affine map: matrix and offset sizes differ");
  PolyMap m{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw DimensionError("affine map: matrix is not square");
    Polynomial p = Polynomial::constant(n, offset[i]);
    for (std::size_t j = 0; j < n; ++j) p += matrix[i][j] * Polynomial::variable(n, j);
    m.images.push_back(std::move(p));
  }
  return m;
}

Polynomial PolyMap::pull(const Polynomial& f) const {
  if (f.nvars() != images.size()) {
    throw DimensionError("pullback: function lives on a chart of dimension " + std::to_string(f.nvars()) +
                         ", map target has dimension " + std::to_string(images.size()));
  }
  return f.substitute(images, source_dim);
}

PolyMap PolyMap::after(const PolyMap& inner) const {
  if (inner.target_dim() != source_dim) throw DimensionError("maps are not composable");
  PolyMap r{inner.source_dim, {}};
  for (const auto& im : images) r.images.push_back(inner.pull(im));
  return r;
}

PolyMatrix PolyMap::jacobian() const {
  PolyMatrix j(images.size(), source_dim, source_dim);
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t k = 0; k < source_dim; ++k) j.at(i, k) = images[i].derive(k);
  return j;
}

bool PolyMap::is_identity() const { return *this == identity(source_dim); }

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), a_(rows * cols, Polynomial(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
  PolyMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(nvars, Rational(1));
  return m;
}

PolyMatrix PolyMatrix::constant(const std::vector<std::vector<Rational>>& rows, std::size_t nvars) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(rows.size(), c, nvars);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Polynomial::constant(nvars, rows[i][j]);
  }
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PolyMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_, nvars_); }

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

PolyMatrix PolyMatrix::pull(const PolyMap& map) const {
  if (map.target_dim() != nvars_) throw DimensionError("matrix pullback: chart mismatch");
  PolyMatrix r(rows_, cols_, map.source_dim);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = map.pull(a_[i]);
  return r;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMatrix r(rows.size(), cols.size(), nvars_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows[i], cols[j]);
  return r;
}

PolyMatrix PolyMatrix::derive(std::size_t axis) const {
  PolyMatrix r(rows_, cols_, nvars_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].derive(axis);
  return r;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("polynomial matrix product size mismatch");
  if (a.nvars_ != b.nvars_) throw DimensionError("polynomial matrix product chart mismatch");
  PolyMatrix r(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Polynomial& y = b.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

PolyMatrix operator*(const Polynomial& c, const PolyMatrix& m) {
  PolyMatrix r = m;
  for (auto& x : r.a_) x = c * x;
  return r;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nvars_ != b.nvars_) throw DimensionError("matrix sum mismatch");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nvars_ != b.nvars_) throw DimensionError("matrix difference mismatch");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.nvars() != b.nvars()) throw DimensionError("hconcat mismatch");
  PolyMatrix r(a.rows(), a.cols() + b.cols(), a.nvars());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

PolyMatrix vconcat(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.cols() || a.nvars() != b.nvars()) throw DimensionError("vconcat mismatch");
  PolyMatrix r(a.rows() + b.rows(), a.cols(), a.nvars());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) r.at(a.rows() + i, j) = b.at(i, j);
  }
  return r;
}

namespace {

Polynomial divide_or_throw(const Polynomial& n, const Polynomial& d) {
  auto q = n.divide_exact(d);
  if (!q) throw std::logic_error("Bareiss step produced an inexact division");
  return *q;
}

/// Fraction-free elimination over Q[x]; returns the number of pivots and, for square input,
/// the determinant up to the sign of the row swaps.
std::size_t bareiss_rank(std::vector<std::vector<Polynomial>> a, std::size_t nvars, Polynomial* det) {
  const std::size_t R = a.size(), C = R ? a.front().size() : 0;
  Polynomial prev = Polynomial::constant(nvars, Rational(1));
  int sign = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < C && k < R; ++c) {
    std::size_t p = R;
    // Prefer a constant pivot to keep intermediate degrees low.
    for (std::size_t i = k; i < R; ++i) {
      if (a[i][c].is_zero()) continue;
      if (p == R || (a[i][c].is_constant() && !a[p][c].is_constant())) p = i;
    }
    if (p == R) {
      if (det) {
        *det = Polynomial(nvars);
        return k;
      }
      continue;
    }
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        a[i][j] = divide_or_throw(a[k][c] * a[i][j] - a[i][c] * a[k][j], prev);
      }
      a[i][c] = Polynomial(nvars);
    }
    prev = a[k][c];
    ++k;
  }
  if (det) *det = sign > 0 ? prev : -prev;
  return k;
}

std::vector<std::vector<Polynomial>> to_rows(const PolyMatrix& m) {
  std::vector<std::vector<Polynomial>> a(m.rows(), std::vector<Polynomial>(m.cols(), Polynomial(m.nvars())));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  return a;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  if (m.rows() == 0) return Polynomial::constant(m.nvars(), Rational(1));
  Polynomial det(m.nvars());
  bareiss_rank(to_rows(m), m.nvars(), &det);
  return det;
}

std::size_t generic_rank(const PolyMatrix& m) { return bareiss_rank(to_rows(m), m.nvars(), nullptr); }

std::optional<PolyMatrix> unit_inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const Polynomial det = determinant(m);
  if (!det.is_unit()) return std::nullopt;
  const Rational inv_det = det.constant_term().inverse();
  PolyMatrix inv(n, n, m.nvars());
  if (n == 1) {
    inv.at(0, 0) = Polynomial::constant(m.nvars(), inv_det);
    return inv;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows.clear();
      cols.clear();
      for (std::size_t r = 0; r < n; ++r)
        if (r != j) rows.push_back(r);
      for (std::size_t c = 0; c < n; ++c)
        if (c != i) cols.push_back(c);
      Polynomial cof = determinant(m.submatrix(rows, cols));
      if ((i + j) % 2) cof = -cof;
      inv.at(i, j) = cof * inv_det;
    }
  }
  return inv;
}

std::optional<std::vector<std::size_t>> unit_minor_columns(const PolyMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r > c) throw DimensionError("unit minor search needs rows <= cols");
  std::vector<std::size_t> rows(r), comb(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = comb[i] = i;
  do {
    if (determinant(m.submatrix(rows, comb)).is_unit()) return comb;
  } while (next_combination(comb, c));
  return std::nullopt;
}

std::optional<PolyMatrix> unit_kernel_frame(const PolyMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), nv = m.nvars();
  auto pivots = unit_minor_columns(m);
  if (!pivots) return std::nullopt;
  std::vector<std::size_t> all_rows(r), free;
  for (std::size_t i = 0; i < r; ++i) all_rows[i] = i;
  std::vector<bool> is_pivot(c, false);
  for (std::size_t p : *pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < c; ++j)
    if (!is_pivot[j]) free.push_back(j);
  const PolyMatrix inv = *unit_inverse(m.submatrix(all_rows, *pivots));
  const PolyMatrix rhs = inv * m.submatrix(all_rows, free);
  PolyMatrix frame(c, free.size(), nv);
  for (std::size_t f = 0; f < free.size(); ++f) {
    frame.at(free[f], f) = Polynomial::constant(nv, Rational(1));
    for (std::size_t p = 0; p < r; ++p) frame.at((*pivots)[p], f) = -rhs.at(p, f);
  }
  return frame;
}

std::optional<PolyMatrix> solve_rows(const PolyMatrix& m, const PolyMatrix& v) {
  if (v.cols() != m.cols() || v.nvars() != m.nvars()) throw DimensionError("solve_rows shape mismatch");
  if (m.rows() == 0) {
    if (!v.is_zero()) return std::nullopt;
    return PolyMatrix(v.rows(), 0, m.nvars());
  }
  if (m.rows() > m.cols()) return std::nullopt;
  auto pivots = unit_minor_columns(m);
  if (!pivots) return std::nullopt;
  std::vector<std::size_t> all_rows(m.rows()), v_rows(v.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
  for (std::size_t i = 0; i < v.rows(); ++i) v_rows[i] = i;
  const PolyMatrix inv = *unit_inverse(m.submatrix(all_rows, *pivots));
  PolyMatrix z = v.submatrix(v_rows, *pivots) * inv;
  if (!(z * m == v)) return std::nullopt;
  return z;
}

}  // namespace algebroidkit
