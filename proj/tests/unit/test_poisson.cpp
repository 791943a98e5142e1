#include <doctest.h>

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/algebroid/morphism.hpp"
#include "algebroidkit/error.hpp"
#include "algebroidkit/groupoid/groupoid_algebroid.hpp"
#include "algebroidkit/poisson/poisson.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

using namespace algebroidkit;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, Rational c) { return Polynomial::constant(n, c); }

PolyMatrix skew2(std::size_t n, std::size_t i, std::size_t j, const Polynomial& c) {
  PolyMatrix M(n, n, n);
  M.at(i, j) = c;
  M.at(j, i) = -c;
  return M;
}

PolyMatrix so3() {
  PolyMatrix M(3, 3, 3);
  const std::size_t cyc[3][3] = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
  for (const auto& c : cyc) {
    M.at(c[0], c[1]) = var(3, c[2]);
    M.at(c[1], c[0]) = -var(3, c[2]);
  }
  return M;
}

PolyMatrix sl2_lie_poisson() {
  // Π_ij = Σ_k c^k_ij x_k for [e0,e1] = 2e1, [e0,e2] = −2e2, [e1,e2] = e0.
  PolyMatrix M(3, 3, 3);
  M.at(0, 1) = Rational(2) * var(3, 1);
  M.at(0, 2) = Rational(-2) * var(3, 2);
  M.at(1, 2) = var(3, 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) M.at(i, j) = -M.at(j, i);
  return M;
}

PoissonStructure verified(const PolyMatrix& M) {
  PoissonCheck c = verify_poisson(PolyVectorField::bivector(M));
  REQUIRE(c.structure.has_value());
  return *c.structure;
}

PolyVectorField random_field(gen::Rng& rng, std::size_t n, std::size_t degree) {
  PolyVectorField P = PolyVectorField::zero(n, degree);
  for (auto& c : P.components)
    if (rng() % 3 != 0) c = gen::random_poly(rng, n, 2, 2);
  return P;
}

PolyVectorField scale(const PolyVectorField& P, int s) {
  PolyVectorField out = P;
  for (auto& c : out.components) c = c * Rational(s);
  return out;
}

int parity(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

PolyMatrix darboux(std::size_t pairs) {
  const std::size_t n = 2 * pairs;
  PolyMatrix W(n, n, n);
  for (std::size_t i = 0; i < pairs; ++i) {
    W.at(2 * i, 2 * i + 1) = cst(n, 1);
    W.at(2 * i + 1, 2 * i) = cst(n, -1);
  }
  return W;
}

PolyMatrix neg(const PolyMatrix& M) { return cst(M.nvars(), -1) * M; }

}  // namespace

TEST_CASE("Schouten bracket examples") {
  const PolyVectorField dxdy = PolyVectorField::bivector(skew2(2, 0, 1, cst(2, 1)));
  CHECK(schouten_bracket(dxdy, dxdy).is_zero());
  CHECK(schouten_bracket(dxdy, dxdy).degree == 3);

  const PolyVectorField v = PolyVectorField::vector_field({var(1, 0)});
  const PolyVectorField f = PolyVectorField::function(1, var(1, 0).pow(2));
  CHECK(schouten_bracket(v, f).components[0] == Rational(2) * var(1, 0).pow(2));

  // [∂x, x∂y] = ∂y.
  const PolyVectorField a = PolyVectorField::vector_field({cst(2, 1), Polynomial(2)});
  const PolyVectorField b = PolyVectorField::vector_field({Polynomial(2), var(2, 0)});
  CHECK(schouten_bracket(a, b) == PolyVectorField::vector_field({Polynomial(2), cst(2, 1)}));

  const PolyVectorField lp = PolyVectorField::bivector(sl2_lie_poisson());
  CHECK(schouten_bracket(lp, lp).is_zero());

  CHECK_THROWS_AS(schouten_bracket(a, v), DimensionError);
  CHECK_THROWS_AS(PolyVectorField::bivector(PolyMatrix::identity(2, 2)), PreconditionError);
}

TEST_CASE("Schouten bracket identities") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t p = rng() % 3, q = rng() % 3, r = rng() % 3;
    const PolyVectorField P = random_field(rng, 3, p), Q = random_field(rng, 3, q), R = random_field(rng, 3, r);
    CAPTURE(p);
    CAPTURE(q);
    CAPTURE(r);
    if (p + q == 0) continue;
    // Graded antisymmetry.
    CHECK(schouten_bracket(P, Q) == scale(schouten_bracket(Q, P), -parity((p + 1) * (q + 1))));
    // Graded Leibniz in the second slot.
    if (p + q + r > 0 && p + q > 0 && p + r > 0) {
      const PolyVectorField lhs = schouten_bracket(P, wedge(Q, R));
      const PolyVectorField rhs =
          wedge(schouten_bracket(P, Q), R) + scale(wedge(Q, schouten_bracket(P, R)), parity((p + 1) * q));
      CHECK(lhs == rhs);
    }
    // Graded Jacobi: [P,[Q,R]] = [[P,Q],R] + (−1)^{(p−1)(q−1)} [Q,[P,R]].
    if (q + r > 0 && p + r > 0 && p + q > 0 && p + q + r > 1) {
      const PolyVectorField lhs = schouten_bracket(P, schouten_bracket(Q, R));
      const PolyVectorField rhs = schouten_bracket(schouten_bracket(P, Q), R) +
                                  scale(schouten_bracket(Q, schouten_bracket(P, R)), parity((p + 1) * (q + 1)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Poisson verification examples") {
  CHECK(verify_poisson(PolyVectorField::bivector(skew2(2, 0, 1, cst(2, 1)))).structure.has_value());
  gen::Rng rng(12);
  for (int i = 0; i < 5; ++i) CHECK(verify_poisson(PolyVectorField::bivector(gen::random_skew(rng, 2, 3))).verdict.valid);
  const PoissonCheck s = verify_poisson(PolyVectorField::bivector(so3()));
  CHECK(s.verdict.valid);
  CHECK(s.verdict.certificate.size() == 2);

  // ∂0∧∂1 + x1 ∂1∧∂2: {x2,{x0,x1}} + … = −1.
  PolyMatrix bad = skew2(3, 0, 1, cst(3, 1)) + skew2(3, 1, 2, var(3, 1));
  CHECK_FALSE(oracle::jacobiator(bad, var(3, 0), var(3, 1), var(3, 2)).is_zero());
  const PoissonCheck b = verify_poisson(PolyVectorField::bivector(bad));
  CHECK_FALSE(b.verdict.valid);
  CHECK_FALSE(b.structure.has_value());
  REQUIRE_FALSE(b.verdict.witnesses.empty());
  CHECK_FALSE(b.verdict.witnesses[0].residue.is_zero());
  CHECK_THROWS_AS(verify_poisson(PolyVectorField::vector_field({cst(1, 1)})), DimensionError);
}

TEST_CASE("Schouten square agrees with the Jacobi identity") {
  gen::Rng rng(99);
  int poisson = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const PolyMatrix M = trial % 2 == 0 ? gen::random_nambu(rng, 3) : gen::random_skew(rng, 3, 2);
    bool jacobi = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const Polynomial f = gen::random_poly(rng, 3, 2, 3), g = gen::random_poly(rng, 3, 2, 3);
      jacobi = jacobi && oracle::jacobiator(M, f, g, var(3, k)).is_zero();
    }
    jacobi = jacobi && oracle::jacobiator(M, var(3, 0), var(3, 1), var(3, 2)).is_zero();
    const PoissonCheck c = verify_poisson(PolyVectorField::bivector(M));
    CHECK(c.verdict.valid == jacobi);
    CHECK(c.schouten_square.is_zero() == jacobi);
    if (trial % 2 == 0) CHECK(c.verdict.valid);
    if (c.structure) {
      ++poisson;
      CHECK(verify_algebroid(cotangent_algebroid(*c.structure)).valid);
      CHECK(oracle::direct_axioms(cotangent_algebroid(*c.structure).local()));
    }
  }
  CHECK(poisson >= 30);
}

TEST_CASE("cotangent algebroids") {
  const PoissonStructure sym = verified(skew2(2, 0, 1, cst(2, 1)));
  const AlgebroidPresentation T = cotangent_algebroid(sym);
  CHECK(T.local().anchor == PolyMatrix::constant({{0, 1}, {-1, 0}}, 2));
  CHECK(verify_algebroid(T).valid);
  CHECK(change_frame(T.local(), PolyMatrix::constant({{0, -1}, {1, 0}}, 2)) == tangent_algebroid(2).local());

  const PoissonStructure zero = verified(PolyMatrix(3, 3, 3));
  CHECK(cotangent_algebroid(zero) == AlgebroidPresentation::zero(ChartBase::affine(3), 3));

  const AlgebroidPresentation L = cotangent_algebroid(verified(sl2_lie_poisson()));
  const AlgebroidPresentation g = gen::split_sl2();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        CHECK(L.local().bracket(i, j, k) == cst(3, g.local().bracket(i, j, k).constant_term()));
  CHECK(verify_algebroid(L).valid);

  // Leibniz-compatible bracket on exact forms: [df, dg] = d{f,g}.
  const PoissonStructure so = verified(so3());
  const AlgebroidPresentation S = cotangent_algebroid(so);
  const Polynomial f = var(3, 0) * var(3, 1), h = var(3, 2).pow(2);
  Section df(3, Polynomial(3)), dh(3, Polynomial(3)), dfh(3, Polynomial(3));
  const Polynomial fh = so.bracket(f, h);
  for (std::size_t mu = 0; mu < 3; ++mu) {
    df[mu] = f.derive(mu);
    dh[mu] = h.derive(mu);
    dfh[mu] = fh.derive(mu);
  }
  CHECK(S.local().bracket_of(df, dh) == dfh);
}

TEST_CASE("linear Poisson structures on duals") {
  CHECK(linear_poisson_on_dual(abelian_lie_algebra(2)).bivector().is_zero());

  const PoissonStructure lp = linear_poisson_on_dual(gen::split_sl2());
  CHECK(lp.bivector().matrix() == sl2_lie_poisson());

  // Tangent algebroid of the line: {p, x} = 1, so Π = −∂x∧∂p.
  const PoissonStructure can = linear_poisson_on_dual(tangent_algebroid(1));
  CHECK(can.bivector().matrix() == skew2(2, 0, 1, cst(2, -1)));

  gen::Rng rng(64);
  for (int trial = 0; trial < 15; ++trial) {
    const AlgebroidPresentation A = gen::random_valid_algebroid(rng, 2, 2);
    const LocalStructure& L = A.local();
    const std::size_t n = L.dim(), r = L.rank(), N = n + r;
    const PoissonStructure P = linear_poisson_on_dual(A);
    CHECK(verify_poisson(P.bivector()).verdict.valid);
    auto p = [&](std::size_t i) { return var(N, n + i); };
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        Polynomial c(N);
        for (std::size_t k = 0; k < r; ++k) c += L.bracket(i, j, k).embed(N) * p(k);
        CHECK(P.bracket(p(i), p(j)) == c);
      }
      const Polynomial f = gen::random_poly(rng, n, 2, 2);
      CHECK(P.bracket(p(i), f.embed(N)) == L.anchor_apply(i, f).embed(N));
    }
    for (std::size_t mu = 0; mu < n; ++mu)
      for (std::size_t nu = 0; nu < n; ++nu) CHECK(P.bracket(var(N, mu), var(N, nu)).is_zero());
    // Fibrewise linearity: every component has degree ≤ 1 in the fibre coordinates.
    for (const auto& c : P.bivector().components)
      for (const auto& [e, coeff] : c.terms()) {
        unsigned fibre = 0;
        for (std::size_t k = n; k < N; ++k) fibre += e[k];
        CHECK(fibre <= 1);
      }
  }

  // Lie algebras round-trip through differentiation.
  const AlgebroidPresentation h = gen::heisenberg();
  const AlgebroidPresentation back = cotangent_algebroid(linear_poisson_on_dual(h));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        CHECK(back.local().bracket(i, j, k) == cst(3, h.local().bracket(i, j, k).constant_term()));

  AlgebroidPresentation broken = gen::split_sl2();
  broken.local().bracket.set(0, 1, 1, Polynomial::constant(0, Rational(3)));
  CHECK_THROWS_AS(linear_poisson_on_dual(broken), PreconditionError);
}

TEST_CASE("invariant Poisson structures") {
  const PoissonStructure sym = verified(skew2(2, 0, 1, cst(2, 1)));
  const DeskGroupoid minus = gen::generate_group({PolyMap::affine({{-1, 0}, {0, -1}}, {Rational(0), Rational(0)})}, 2);
  const DeskGroupoid flip = gen::generate_group({PolyMap::affine({{-1, 0}, {0, 1}}, {Rational(0), Rational(0)})}, 2);
  CHECK(check_invariant_poisson(sym, minus).valid);
  const Verdict v = check_invariant_poisson(sym, flip);
  CHECK_FALSE(v.valid);
  REQUIRE_FALSE(v.witnesses.empty());
  CHECK(v.witnesses[0].residue == cst(2, -2));
  CHECK(check_invariant_poisson(verified(PolyMatrix(2, 2, 2)), flip).valid);
  CHECK_THROWS_AS(check_invariant_poisson(sym, DeskGroupoid::cyclic(2)), DimensionError);

  // Agreement with the groupoid-algebroid check for T*_Π with ψ_g = J_{g⁻¹}.
  const DeskGroupoid rot = gen::generate_group(
      {PolyMap::affine({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}, {Rational(0), Rational(0), Rational(0)})}, 3);
  const DeskGroupoid zflip = gen::generate_group(
      {PolyMap::affine({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}, {Rational(0), Rational(0), Rational(0)})}, 3);
  const DeskGroupoid inv3 = gen::generate_group(
      {PolyMap::affine({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, {Rational(0), Rational(0), Rational(0)})}, 3);
  std::vector<std::pair<PolyMatrix, DeskGroupoid>> cases = {
      {skew2(2, 0, 1, cst(2, 1)), minus}, {skew2(2, 0, 1, cst(2, 1)), flip}, {so3(), rot}, {so3(), zflip},
      {so3(), inv3}, {sl2_lie_poisson(), inv3}, {skew2(3, 0, 1, var(3, 2).pow(2)), zflip}, {skew2(3, 0, 1, var(3, 2)), zflip}};
  gen::Rng rng(5);
  for (int i = 0; i < 6; ++i) cases.push_back({gen::random_nambu(rng, 2), i % 2 ? zflip : rot});
  int valid = 0, invalid = 0;
  for (const auto& [M, G] : cases) {
    const PoissonStructure P = verified(M);
    GroupoidAlgebroid GA{G, cotangent_algebroid(P), {}};
    for (std::size_t g = 0; g < G.order(); ++g) GA.psi.push_back(G.jacobian(G.inverse(g)));
    const bool inv = check_invariant_poisson(P, G).valid;
    CHECK(inv == verify_groupoid_algebroid(GA).valid);
    (inv ? valid : invalid)++;
  }
  CHECK(valid >= 3);
  CHECK(invalid >= 3);
}

TEST_CASE("symplectic structures") {
  const SymplecticResult plane = symplectic_to_poisson(darboux(1), neg(darboux(1)), 3);
  CHECK(plane.poisson.bivector() == PolyVectorField::bivector(skew2(2, 0, 1, cst(2, 1))));
  CHECK(plane.certificate.valid);
  CHECK(plane.cotangent_betti == plane.tangent_betti);
  CHECK(plane.tangent_betti.at(0) == std::vector<std::size_t>{1, 0, 0});
  CHECK(plane.cotangent_betti.at(2) == std::vector<std::size_t>{0, 0, 0});

  const SymplecticResult block = symplectic_to_poisson(darboux(2), neg(darboux(2)), 3);
  CHECK(block.certificate.valid);
  CHECK(block.poisson.bivector().matrix() == darboux(2));
  CHECK(block.cotangent_betti == block.tangent_betti);

  CHECK_THROWS_AS(symplectic_to_poisson(PolyMatrix(2, 2, 2), PolyMatrix(2, 2, 2), 2), PreconditionError);
  // x2 dx0∧dx1 + dx2∧dx3 is not closed.
  PolyMatrix open = darboux(2);
  open.at(0, 1) = var(4, 2);
  open.at(1, 0) = -var(4, 2);
  CHECK_THROWS_AS(symplectic_to_poisson(open, neg(darboux(2)), 2), PreconditionError);
  CHECK_THROWS_AS(symplectic_to_poisson(darboux(1), darboux(1), 2), PreconditionError);
  CHECK_THROWS_AS(symplectic_to_poisson(PolyMatrix::identity(2, 2), PolyMatrix::identity(2, 2), 2), PreconditionError);

  // dx0∧dx1 + dx2∧dx3 + 2x1 dx1∧dx2 is closed with unit Pfaffian but not graded.
  PolyMatrix curved = darboux(2);
  curved.at(1, 2) = Rational(2) * var(4, 1);
  curved.at(2, 1) = Rational(-2) * var(4, 1);
  PolyMatrix inv(4, 4, 4);
  // Inverse of W = [[0,1,0,0],[-1,0,c,0],[0,-c,0,1],[0,0,-1,0]] with c = 2x1.
  const Polynomial c = Rational(2) * var(4, 1);
  inv.at(0, 1) = cst(4, -1);
  inv.at(0, 3) = -c;
  inv.at(1, 0) = cst(4, 1);
  inv.at(2, 3) = cst(4, -1);
  inv.at(3, 0) = c;
  inv.at(3, 2) = cst(4, 1);
  REQUIRE(curved * inv == PolyMatrix::identity(4, 4));
  CHECK_THROWS_AS(symplectic_to_poisson(curved, inv, 2), GradingError);
}
