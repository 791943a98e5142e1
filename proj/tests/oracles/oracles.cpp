#include "oracles/oracles.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

std::size_t rank(QMatrix m) {
  const std::size_t R = m.size();
  if (R == 0) return 0;
  const std::size_t C = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < C; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<std::size_t> betti(const std::vector<std::size_t>& dims, const std::vector<QMatrix>& diffs) {
  std::vector<std::size_t> ranks;
  for (const auto& d : diffs) ranks.push_back(rank(d));
  std::vector<std::size_t> b(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::size_t out = k < ranks.size() ? ranks[k] : 0;
    std::size_t in = k > 0 ? ranks[k - 1] : 0;
    b[k] = dims[k] - out - in;
  }
  return b;
}

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Value of the basis k-form e^S on basis vectors (i_1..i_k): sign of the permutation, or 0.
mpq_class basis_form(const std::vector<std::size_t>& S, std::vector<std::size_t> args) {
  if (args.size() != S.size()) return 0;
  std::vector<std::size_t> sorted = args;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != S) return 0;
  int sign = 1;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j)
      if (args[i] > args[j]) sign = -sign;
  return sign;
}

}  // namespace

std::vector<std::size_t> ce_betti(const Structure& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> dims;
  std::vector<QMatrix> diffs;
  for (std::size_t k = 0; k <= n; ++k) dims.push_back(subsets(n, k).size());
  for (std::size_t k = 0; k < n; ++k) {
    auto src = subsets(n, k), dst = subsets(n, k + 1);
    QMatrix d(dst.size(), std::vector<mpq_class>(src.size(), 0));
    for (std::size_t col = 0; col < src.size(); ++col) {
      for (std::size_t row = 0; row < dst.size(); ++row) {
        const auto& x = dst[row];
        mpq_class val = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          for (std::size_t j = i + 1; j < x.size(); ++j) {
            std::vector<std::size_t> rest;
            for (std::size_t t = 0; t < x.size(); ++t)
              if (t != i && t != j) rest.push_back(x[t]);
            const int s = ((i + j) % 2) ? -1 : 1;
            for (std::size_t m = 0; m < n; ++m) {
              if (c[x[i]][x[j]][m] == 0) continue;
              std::vector<std::size_t> args{m};
              args.insert(args.end(), rest.begin(), rest.end());
              val += s * c[x[i]][x[j]][m] * basis_form(src[col], args);
            }
          }
        }
        d[row][col] = val;
      }
    }
    diffs.push_back(d);
  }
  return betti(dims, diffs);
}

bool jacobi_holds(const Structure& c) {
  const std::size_t n = c.size();
  auto br = [&](const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) {
    std::vector<mpq_class> r(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (u[i] != 0 && v[j] != 0)
          for (std::size_t k = 0; k < n; ++k) r[k] += u[i] * v[j] * c[i][j][k];
    return r;
  };
  auto e = [&](std::size_t i) {
    std::vector<mpq_class> v(n, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto a = br(e(i), br(e(j), e(k)));
        auto b = br(e(j), br(e(k), e(i)));
        auto d = br(e(k), br(e(i), e(j)));
        for (std::size_t m = 0; m < n; ++m)
          if (a[m] + b[m] + d[m] != 0) return false;
      }
  return true;
}

namespace {
Structure empty(std::size_t n) {
  return Structure(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n, 0)));
}
void set(Structure& c, std::size_t i, std::size_t j, std::size_t k, const mpq_class& v) {
  c[i][j][k] = v;
  c[j][i][k] = -v;
}
}  // namespace

Structure sl2() {
  Structure c = empty(3);
  set(c, 0, 1, 2, 1);
  set(c, 1, 2, 0, 1);
  set(c, 2, 0, 1, 1);
  return c;
}

Structure heisenberg() {
  Structure c = empty(3);
  set(c, 0, 1, 2, 1);
  return c;
}

Structure abelian(std::size_t n) { return empty(n); }

}  // namespace oracle

namespace oracle {

using algebroidkit::LocalStructure;
using algebroidkit::Polynomial;
using algebroidkit::PolyMatrix;

namespace {
Polynomial apply_anchor(const LocalStructure& A, std::size_t i, const Polynomial& f) {
  Polynomial r(A.dim());
  for (std::size_t mu = 0; mu < A.dim(); ++mu) r += A.anchor.at(i, mu) * f.derive(mu);
  return r;
}
}  // namespace

bool direct_axioms(const LocalStructure& A) {
  const std::size_t r = A.rank(), n = A.dim();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t mu = 0; mu < n; ++mu) {
        Polynomial lhs(n), rhs(n);
        for (std::size_t k = 0; k < r; ++k) lhs += A.bracket(i, j, k) * A.anchor.at(k, mu);
        for (std::size_t nu = 0; nu < n; ++nu) {
          rhs += A.anchor.at(i, nu) * A.anchor.at(j, mu).derive(nu);
          rhs -= A.anchor.at(j, nu) * A.anchor.at(i, mu).derive(nu);
        }
        if (!(lhs == rhs)) return false;
      }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t m = 0; m < r; ++m) {
          Polynomial jac(n);
          const std::size_t t[3] = {i, j, k};
          for (int s = 0; s < 3; ++s) {
            const std::size_t a = t[s], b = t[(s + 1) % 3], c = t[(s + 2) % 3];
            for (std::size_t l = 0; l < r; ++l) jac += A.bracket(a, b, l) * A.bracket(l, c, m);
            jac -= apply_anchor(A, a, A.bracket(b, c, m));
          }
          if (!jac.is_zero()) return false;
        }
  return true;
}

bool direct_flatness(const LocalStructure& A, const std::vector<PolyMatrix>& gamma) {
  const std::size_t r = A.rank(), n = A.dim();
  if (r == 0) return true;
  const std::size_t m = gamma.at(0).rows();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t g = 0; g < m; ++g) {
          Polynomial x = apply_anchor(A, i, gamma[j].at(a, g)) - apply_anchor(A, j, gamma[i].at(a, g));
          for (std::size_t b = 0; b < m; ++b) {
            x += gamma[j].at(a, b) * gamma[i].at(b, g);
            x -= gamma[i].at(a, b) * gamma[j].at(b, g);
          }
          for (std::size_t k = 0; k < r; ++k) x -= A.bracket(i, j, k) * gamma[k].at(a, g);
          (void)n;
          if (!x.is_zero()) return false;
        }
  return true;
}

}  // namespace oracle

namespace oracle {

using algebroidkit::PolyMatrix;
using algebroidkit::Polynomial;

Polynomial poisson_bracket(const PolyMatrix& pi, const Polynomial& f, const Polynomial& g) {
  Polynomial out(f.nvars());
  for (std::size_t mu = 0; mu < pi.rows(); ++mu)
    for (std::size_t nu = 0; nu < pi.cols(); ++nu) out += pi.at(mu, nu) * algebroidkit::poly_derive(f, mu) * algebroidkit::poly_derive(g, nu);
  return out;
}

Polynomial jacobiator(const PolyMatrix& pi, const Polynomial& f, const Polynomial& g, const Polynomial& h) {
  return poisson_bracket(pi, f, poisson_bracket(pi, g, h)) + poisson_bracket(pi, g, poisson_bracket(pi, h, f)) +
         poisson_bracket(pi, h, poisson_bracket(pi, f, g));
}

}  // namespace oracle
