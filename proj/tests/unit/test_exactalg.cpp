#include <doctest.h>

#include <random>

#include "algebroidkit/exactalg/complexes.hpp"
#include "algebroidkit/exactalg/poly_matrix.hpp"
#include "oracles/oracles.hpp"

using namespace algebroidkit;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, Rational c) { return Polynomial::constant(n, c); }

Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, static_cast<int>(max_deg));
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars, 0);
    unsigned total = 0;
    for (auto& x : e) {
      unsigned d = static_cast<unsigned>(deg(rng));
      if (total + d > max_deg) d = 0;
      x = d;
      total += d;
    }
    p.add_term(e, Rational(coeff(rng)));
  }
  return p;
}

oracle::QMatrix to_q(const RatMatrix& m) {
  oracle::QMatrix q(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q[i][j] = m.at(i, j).value();
  return q;
}

}  // namespace

TEST_CASE("rationals stay reduced and render as p/q") {
  Rational a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK(a.denominator() == 2);
  CHECK((Rational(1, 3) + Rational(2, 3)).str() == "1");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("partial derivatives") {
  const auto x = var(2, 0), y = var(2, 1);
  CHECK(poly_derive(x * x * y, 0) == cst(2, 2) * x * y);
  CHECK(poly_derive(cst(2, 7), 0).is_zero());
  CHECK(poly_derive(x * x + cst(2, 3) * y, 1) == cst(2, 3));
  CHECK_THROWS_AS(poly_derive(x, 2), DimensionError);
}

TEST_CASE("substitution") {
  const auto x = var(1, 0);
  CHECK(poly_substitute(x * x, {x + cst(1, 1)}) == x * x + cst(1, 2) * x + cst(1, 1));
  const auto u = var(2, 0), v = var(2, 1);
  CHECK(poly_substitute(u * v, {v, u}) == u * v);
  CHECK(poly_substitute(x, {cst(1, 2) * x}) == cst(1, 2) * x);
  CHECK_THROWS_AS(poly_substitute(u * v, {x}), DimensionError);
}

TEST_CASE("substitution is a ring homomorphism and obeys the chain rule") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2, m = 2;
    Polynomial p = random_poly(rng, n, 3, 4), q = random_poly(rng, n, 3, 4);
    std::vector<Polynomial> phi{random_poly(rng, m, 3, 3), random_poly(rng, m, 3, 3)};
    CHECK(poly_substitute(p + q, phi) == poly_substitute(p, phi) + poly_substitute(q, phi));
    CHECK(poly_substitute(p * q, phi) == poly_substitute(p, phi) * poly_substitute(q, phi));
    for (std::size_t a = 0; a < m; ++a) {
      Polynomial lhs = poly_derive(poly_substitute(p, phi), a);
      Polynomial rhs(m);
      for (std::size_t i = 0; i < n; ++i) rhs += poly_substitute(poly_derive(p, i), phi) * poly_derive(phi[i], a);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("exact division and rendering") {
  const auto x = var(2, 0), y = var(2, 1);
  const Polynomial f = (x + y) * (x - cst(2, 3) * y * y);
  auto q = f.divide_exact(x + y);
  REQUIRE(q);
  CHECK(*q == x - cst(2, 3) * y * y);
  CHECK_FALSE((x * y + cst(2, 1)).divide_exact(x));
  CHECK((cst(2, Rational(-3, 4)) * y + x * x * y * cst(2, 2) + cst(2, 1)).str() == "2*x0^2*x1 - 3/4*x1 + 1");
  CHECK(Polynomial(3).str() == "0");
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(RatMatrix(2, 2)).size() == 2);
  CHECK(kernel_basis(RatMatrix::identity(3)).empty());
  auto k = kernel_basis(RatMatrix::from_rows({{1, 1}, {2, 2}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK_FALSE(k[0][0].is_zero());
}

TEST_CASE("rank-nullity and kernel correctness on random matrices") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), dim(1, 6);
  for (int trial = 0; trial < 150; ++trial) {
    const int R = dim(rng), C = dim(rng);
    RatMatrix m(R, C);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j)
        if (rng() % 3) m.at(i, j) = Rational(num(rng), den(rng));
    const auto r = rank(m);
    CHECK(r == oracle::rank(to_q(m)));
    const auto ker = kernel_basis(m);
    CHECK(r + ker.size() == static_cast<std::size_t>(C));
    for (const auto& v : ker) {
      for (const auto& x : m.apply(v)) CHECK(x.is_zero());
    }
    if (!ker.empty()) CHECK(rank(RatMatrix::from_columns(ker, C)) == ker.size());
  }
}

TEST_CASE("solve and inverse") {
  RatMatrix a = RatMatrix::from_rows({{2, 1}, {1, 1}});
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == RatMatrix::identity(2));
  CHECK_FALSE(inverse(RatMatrix::from_rows({{1, 2}, {2, 4}})));
  CHECK_FALSE(solve(RatMatrix::from_rows({{1, 2}, {2, 4}}), RatMatrix::from_rows({{1}, {3}})));
}

TEST_CASE("polynomial matrices") {
  const std::size_t n = 2;
  const auto x = var(n, 0), y = var(n, 1);
  PolyMatrix m(2, 2, n);
  m.at(0, 0) = cst(n, 1);
  m.at(0, 1) = x * y;
  m.at(1, 1) = cst(n, 3);
  CHECK(determinant(m) == cst(n, 3));
  auto inv = unit_inverse(m);
  REQUIRE(inv);
  CHECK((m * *inv).is_identity());
  CHECK((*inv * m).is_identity());

  PolyMatrix s(2, 2, n);
  s.at(0, 0) = x;
  s.at(1, 1) = y;
  CHECK(determinant(s) == x * y);
  CHECK_FALSE(unit_inverse(s));
  CHECK(generic_rank(s) == 2);

  PolyMatrix k(1, 3, n);
  k.at(0, 0) = x;
  k.at(0, 1) = cst(n, 1);
  k.at(0, 2) = y;
  auto frame = unit_kernel_frame(k);
  REQUIRE(frame);
  CHECK(frame->cols() == 2);
  CHECK((k * *frame).is_zero());

  PolyMatrix dep(2, 2, n);
  dep.at(0, 0) = x;
  dep.at(0, 1) = y;
  dep.at(1, 0) = x * x;
  dep.at(1, 1) = x * y;
  CHECK(generic_rank(dep) == 1);
  CHECK(determinant(dep).is_zero());
}

TEST_CASE("polynomial maps compose and differentiate") {
  const auto x = var(2, 0), y = var(2, 1);
  PolyMap f{2, {x + y * y, y}};
  PolyMap g{2, {x - y * y, y}};
  CHECK(f.after(g).is_identity());
  CHECK(g.after(f).is_identity());
  PolyMatrix j = f.jacobian();
  CHECK(j.at(0, 1) == cst(2, 2) * y);
}

TEST_CASE("complex cohomology") {
  GradedComplex zero;
  zero.grades[0] = CochainComplex{{1, 3, 3, 1}, {RatMatrix(3, 1), RatMatrix(3, 3), RatMatrix(1, 3)}};
  CHECK(complex_cohomology(zero).at(0) == std::vector<std::size_t>{1, 3, 3, 1});

  GradedComplex bad;
  bad.grades[2] = CochainComplex{{1, 1, 1}, {RatMatrix::identity(1), RatMatrix::identity(1)}};
  try {
    complex_cohomology(bad);
    FAIL("expected rejection");
  } catch (const ComplexError& e) {
    CHECK(e.grade() == 2);
    CHECK(e.degree() == 0);
  }
}

TEST_CASE("complex cohomology agrees with the rank oracle on random complexes") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dim(0, 5), val(-2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    // Build d_k = P_{k+1} Q_k with Q_k P_k = 0 by factoring through random splittings.
    const int len = 4;
    std::vector<std::size_t> dims;
    for (int i = 0; i < len; ++i) dims.push_back(static_cast<std::size_t>(dim(rng)));
    CochainComplex c;
    c.dims = dims;
    RatMatrix prev;  // previous differential
    for (int k = 0; k + 1 < len; ++k) {
      RatMatrix d(dims[k + 1], dims[k]);
      // Random matrix restricted to the kernel complement: compose with projection killing image(prev).
      RatMatrix raw(dims[k + 1], dims[k]);
      for (std::size_t i = 0; i < raw.rows(); ++i)
        for (std::size_t j = 0; j < raw.cols(); ++j) raw.at(i, j) = Rational(val(rng));
      if (k > 0 && prev.cols() > 0 && prev.rows() > 0) {
        // Force raw * prev = 0: replace raw by raw·(I − prev·pinv) computed via the kernel of prevᵀ.
        auto left = kernel_basis(prev.transpose());  // vectors w with wᵀ prev = 0
        RatMatrix proj(dims[k], dims[k]);
        // raw' = Σ_i raw·u_i w_iᵀ, rows of raw' annihilate image(prev)
        for (const auto& w : left)
          for (std::size_t i = 0; i < dims[k]; ++i)
            for (std::size_t j = 0; j < dims[k]; ++j) proj.at(i, j) += w[i] * w[j];
        raw = raw * proj;
      }
      d = raw;
      c.differentials.push_back(d);
      prev = d;
    }
    std::vector<oracle::QMatrix> qd;
    for (const auto& m : c.differentials) qd.push_back(to_q(m));
    GradedComplex g;
    g.grades[0] = c;
    CHECK(complex_cohomology(g).at(0) == oracle::betti(c.dims, qd));
  }
}

TEST_CASE("Chevalley-Eilenberg oracle sanity") {
  CHECK(oracle::ce_betti(oracle::sl2()) == std::vector<std::size_t>{1, 0, 0, 1});
  CHECK(oracle::ce_betti(oracle::heisenberg()) == std::vector<std::size_t>{1, 2, 2, 1});
  CHECK(oracle::ce_betti(oracle::abelian(3)) == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(oracle::jacobi_holds(oracle::sl2()));
}

TEST_CASE("total cohomology") {
  DoubleComplex point;
  point.dims = {{1}};
  point.horizontal = {{}};
  auto b = total_cohomology(point, 0);
  REQUIRE(b.size() == 1);
  CHECK(b[0].betti == 1);

  // Two columns, each an isomorphism Q -> Q vertically: exact everywhere.
  DoubleComplex ex;
  ex.N = 2;
  ex.K = 2;
  ex.dims = {{1, 0, 0}, {1, 0, 0}, {0, 0, 0}};
  ex.horizontal = {{RatMatrix(0, 1), RatMatrix(0, 0)}, {RatMatrix(0, 1), RatMatrix(0, 0)}, {RatMatrix(0, 0), RatMatrix(0, 0)}};
  ex.vertical = {{RatMatrix::identity(1), RatMatrix(0, 0), RatMatrix(0, 0)}, {RatMatrix(0, 1), RatMatrix(0, 0), RatMatrix(0, 0)}};
  auto t = total_cohomology(ex, 1);
  CHECK(t[0].betti == 0);
  CHECK(t[1].betti == 0);
  CHECK(t[0].reliable);
  CHECK(t[1].reliable);

  DoubleComplex broken = ex;
  broken.horizontal[0][0] = RatMatrix(1, 1);
  broken.dims[0][1] = 1;
  broken.horizontal[0][1] = RatMatrix(0, 1);
  broken.vertical[0][1] = RatMatrix(0, 1);
  broken.horizontal[0][0].at(0, 0) = Rational(1);
  // h on row 1 is zero while v∘... forces non-commutation: h_1 v_0 = 0 but v_1 h_0 maps into (1,1) = 0 dims.
  broken.dims[1][1] = 1;
  broken.horizontal[1][0] = RatMatrix(1, 1);
  broken.horizontal[1][0].at(0, 0) = Rational(1);
  broken.horizontal[1][1] = RatMatrix(0, 1);
  broken.vertical[0][1] = RatMatrix(1, 1);
  broken.vertical[1][1] = RatMatrix(0, 1);
  // v_0 at column 1 is zero, so h∘v = 1 but v∘h = 0.
  CHECK_THROWS_AS(total_cohomology(broken, 1), ComplexError);
  CHECK_THROWS_AS(total_cohomology(ex, 3), DimensionError);
}
