#include <doctest.h>

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/error.hpp"
#include "algebroidkit/groupoid/la_groupoid.hpp"
#include "algebroidkit/groupoid/representation.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

using namespace algebroidkit;

namespace {

PolyMatrix scalar(Rational c, std::size_t nvars = 0) { return PolyMatrix::constant({{c}}, nvars); }

GroupoidAlgebroid sign_line() { return {DeskGroupoid::cyclic(2), abelian_lie_algebra(1), {scalar(1), scalar(-1)}}; }

GroupoidAlgebroid reflected_tangent() {
  GroupoidAlgebroid GA{gen::generate_group({PolyMap::affine({{-1}}, {Rational(0)})}, 1), tangent_algebroid(1), {}};
  for (std::size_t g = 0; g < 2; ++g) GA.psi.push_back(GA.groupoid.jacobian(g).transpose());
  return GA;
}

GroupoidAlgebroid trivial_group(const AlgebroidPresentation& A) {
  return {DeskGroupoid::cyclic(1), A, {PolyMatrix::identity(A.rank, A.base.dim())}};
}

LAMorphism then(const LAMorphism& second, const LAMorphism& first) {
  return {first.source, second.target, compose(second.omega_map, first.omega_map), compose(second.base_map, first.base_map)};
}

bool same(const LAMorphism& a, const LAMorphism& b) {
  return same_map(a.omega_map, b.omega_map) && same_map(a.base_map, b.base_map);
}

// Independent check that g ↦ Mᵀ_g is multiplicative on constant matrices.
bool multiplicative(const DeskGroupoid& G, const std::vector<PolyMatrix>& psi) {
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!(psi[G.multiply(g, h)].transpose() == psi[g].transpose() * psi[h].transpose())) return false;
  return psi[0].is_identity();
}

}  // namespace

TEST_CASE("desk groupoids") {
  CHECK(verify_groupoid(DeskGroupoid::cyclic(1)).valid);
  const DeskGroupoid Z2 = gen::generate_group({PolyMap::affine({{-1}}, {Rational(0)})}, 1);
  CHECK(Z2.order() == 2);
  CHECK(Z2.multiply(1, 1) == 0);
  CHECK(verify_groupoid(Z2).valid);
  for (const auto& G : gen::sample_groupoids()) CHECK(verify_groupoid(G).valid);
  CHECK(gen::sample_groupoids()[4].order() == 6);

  DeskGroupoid broken = DeskGroupoid::cyclic(3);
  std::swap(broken.table[1][1], broken.table[1][2]);
  const Verdict v = verify_groupoid(broken);
  CHECK_FALSE(v.valid);
  REQUIRE_FALSE(v.witnesses.empty());
  CHECK(v.witnesses[0].location.find("(g") != std::string::npos);
  CHECK_FALSE(v.witnesses[0].residue.is_zero());

  // Action that does not match the table.
  DeskGroupoid lying = Z2;
  lying.action[1] = PolyMap::affine({{2}}, {Rational(0)});
  CHECK_FALSE(verify_groupoid(lying).valid);
  CHECK_THROWS_AS(DeskGroupoid::from_actions({PolyMap::affine({{2}}, {Rational(0)})}), PreconditionError);
}

TEST_CASE("groupoid algebroid examples") {
  CHECK(verify_groupoid_algebroid(trivial_group(gen::split_sl2())).valid);
  CHECK(verify_groupoid_algebroid(sign_line()).valid);
  CHECK(verify_groupoid_algebroid(reflected_tangent()).valid);

  GroupoidAlgebroid bad{DeskGroupoid::cyclic(2), gen::split_sl2(),
                        {PolyMatrix::identity(3, 0), PolyMatrix::constant({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 0)}};
  const Verdict v = verify_groupoid_algebroid(bad);
  CHECK_FALSE(v.valid);
  CHECK_FALSE(verify_groupoid_sheaf(bad).valid);
  bool bracket = false;
  for (const auto& w : v.witnesses) bracket = bracket || w.detail.find("bracket") != std::string::npos;
  CHECK(bracket);

  // ψ = 2 on ℤ/2 is a morphism arrow by arrow but breaks the cocycle.
  GroupoidAlgebroid doubled = sign_line();
  doubled.psi[1] = scalar(2);
  CHECK_FALSE(verify_groupoid_algebroid(doubled).valid);
  CHECK_FALSE(verify_groupoid_sheaf(doubled).valid);

  GroupoidAlgebroid wrong_size = sign_line();
  wrong_size.psi.pop_back();
  CHECK_THROWS_AS(verify_groupoid_algebroid(wrong_size), DimensionError);
}

TEST_CASE("cocycle and sheaf formulations agree") {
  gen::Rng rng(2024);
  int invalid = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GroupoidAlgebroid GA = gen::random_groupoid_algebroid(rng);
    if (trial % 2 == 1 && GA.groupoid.order() > 1 && GA.algebroid.rank > 0) GA = gen::corrupt(rng, GA);
    const Verdict cocycle = verify_groupoid_algebroid(GA);
    const Verdict sheaf = verify_groupoid_sheaf(GA);
    CHECK(cocycle.valid == sheaf.valid);
    if (trial % 2 == 0) CHECK(cocycle.valid);
    invalid += !cocycle.valid;
  }
  CHECK(invalid > 5);
}

TEST_CASE("tangent actions") {
  const TangentAction unit = action_from_cocycle(trivial_group(gen::split_sl2()));
  CHECK(unit.maps[0] == PolyMatrix::identity(3, 0));

  const TangentAction sign = action_from_cocycle(sign_line());
  CHECK(sign.maps[1] == scalar(-1));
  CHECK(verify_action_law(sign).valid);

  // Pairs (v, ξ) with v = ξ for the tangent algebroid: the second row is the pushforward −1.
  const TangentAction refl = action_from_cocycle(reflected_tangent());
  CHECK(refl.maps[1] == PolyMatrix::constant({{0}, {-1}}, 1));
  CHECK(cocycle_from_action(refl) == reflected_tangent().psi);

  GroupoidAlgebroid doubled = sign_line();
  doubled.psi[1] = scalar(2);
  CHECK_THROWS_AS(action_from_cocycle(doubled), PreconditionError);

  gen::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupoidAlgebroid GA = gen::random_groupoid_algebroid(rng);
    const TangentAction T = action_from_cocycle(GA);
    CHECK(verify_action_law(T).valid);
    CHECK(cocycle_from_action(T) == GA.psi);
  }
}

TEST_CASE("LA-groupoid examples") {
  const AlgebroidPresentation g = gen::split_sl2();
  const LAGroupoid L0 = build_la_groupoid(trivial_group(g));
  CHECK(verify_la_groupoid(L0).valid);
  CHECK(L0.omega.local() == g.local());
  CHECK(L0.t.pieces[0].matrix.is_identity());
  CHECK(L0.i.pieces[0].matrix.is_identity());

  const LAGroupoid Ls = build_la_groupoid(sign_line());
  CHECK(verify_la_groupoid(Ls).valid);
  CHECK(Ls.omega.base.component_count() == 2);
  CHECK(Ls.i.pieces[1].target_component == 1);
  CHECK(Ls.i.pieces[1].matrix == scalar(-1));
  CHECK(Ls.t.pieces[1].matrix == scalar(-1));
  CHECK(Ls.omega2.base.component_count() == 4);

  // Ω for the reflected tangent algebroid is the tangent algebroid of the arrow space.
  const LAGroupoid Lt = build_la_groupoid(reflected_tangent());
  CHECK(verify_la_groupoid(Lt).valid);
  for (std::size_t c = 0; c < 2; ++c) CHECK(Lt.omega.local(c) == tangent_algebroid(1).local());
  CHECK(Lt.t.pieces[1].base_map == PolyMap::affine({{-1}}, {Rational(0)}));
  CHECK(Lt.t.pieces[1].matrix == scalar(-1, 1));

  CHECK(check_bang_vacant(Ls).valid);
  CHECK(check_vacant(Ls).valid);

  GroupoidAlgebroid doubled = sign_line();
  doubled.psi[1] = scalar(2);
  CHECK_THROWS_AS(build_la_groupoid(doubled), PreconditionError);

  // Structure map corrupted after construction.
  LAGroupoid broken = Ls;
  broken.t.pieces[1].matrix = scalar(2);
  CHECK_FALSE(verify_la_groupoid(broken).valid);
}

TEST_CASE("zero arrow algebroid is not vacant") {
  LAGroupoid L = build_la_groupoid(sign_line());
  L.omega = AlgebroidPresentation::zero(L.groupoid.arrow_space(), 0);
  for (auto& p : L.s.pieces) p.matrix = PolyMatrix(0, 1, 0);
  L.s.source = L.omega;
  const Verdict bang = check_bang_vacant(L);
  const Verdict plain = check_vacant(L);
  CHECK_FALSE(bang.valid);
  CHECK_FALSE(plain.valid);
  REQUIRE_FALSE(bang.witnesses.empty());
  CHECK(bang.witnesses[0].detail.find("dimension mismatch") != std::string::npos);
  CHECK_THROWS_AS(f2_recover(L), PreconditionError);
}

TEST_CASE("inverse functor examples") {
  CHECK(f2_recover(build_la_groupoid(trivial_group(gen::split_sl2()))).psi[0].is_identity());
  const GroupoidAlgebroid S = sign_line();
  const GroupoidAlgebroid back = f2_recover(build_la_groupoid(S));
  CHECK(back.psi[1] == scalar(-1));
  CHECK(back == S);

  const EquivariantMorphism rho{S, S, scalar(3)};
  CHECK(check_equivariant(rho).valid);
  const LAMorphism R = f1_morphism(rho);
  CHECK(check_la_morphism(R).valid);
  CHECK(f2_morphism(R).rho == rho.rho);

  const EquivariantMorphism twisted{S, {S.groupoid, S.algebroid, {scalar(1), scalar(1)}}, scalar(1)};
  CHECK_FALSE(check_equivariant(twisted).valid);
}

TEST_CASE("LA-groupoid suite") {
  gen::Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const GroupoidAlgebroid GA = gen::random_groupoid_algebroid(rng);
    CAPTURE(trial);
    REQUIRE(verify_groupoid_algebroid(GA).valid);
    const LAGroupoid L = build_la_groupoid(GA);
    const Verdict v = verify_la_groupoid(L);
    CHECK(v.valid);
    CHECK(v.certificate.size() > 10);

    const Verdict bang = check_bang_vacant(L);
    CHECK(bang.valid);
    CHECK(bang.valid == check_vacant(L).valid);
    bool equal_dims = true;
    for (const auto& c : L.omega.base.components()) equal_dims = equal_dims && c.dim == GA.groupoid.dim;
    CHECK(equal_dims == check_vacant(L).valid);

    // 𝓕₂∘𝓕₁ is the identity; 𝓕₁∘𝓕₂ ≅ id through (ã, s̃).
    const GroupoidAlgebroid back = f2_recover(L);
    CHECK(back == GA);
    const LAMorphism eta = unit_iso(L);
    CHECK(check_la_morphism(eta).valid);

    // Scalars are morphisms only of abelian algebras over the point.
    const std::size_t r = GA.algebroid.rank, n = GA.groupoid.dim;
    const Rational c = r == 1 && n == 0 ? Rational(1 + static_cast<int>(rng() % 3)) : Rational(1);
    const EquivariantMorphism rho{GA, GA, Polynomial::constant(n, c) * PolyMatrix::identity(r, n)};
    REQUIRE(check_equivariant(rho).valid);
    const LAMorphism R = f1_morphism(rho);
    CHECK(check_la_morphism(R).valid);
    CHECK(f2_morphism(R).rho == rho.rho);
    const LAMorphism lifted = f1_morphism(f2_morphism(R));
    CHECK(same(then(unit_iso(R.target), R), then(lifted, eta)));
  }
}

TEST_CASE("groupoid representations") {
  const GroupoidAlgebroid point{DeskGroupoid::cyclic(1), AlgebroidPresentation::zero(ChartBase::point(), 0), {PolyMatrix(0, 0, 0)}};
  const GroupoidRepVerdict trivial = verify_groupoid_rep({point, RepresentationPresentation::trivial(point.algebroid, 1), {scalar(1)}});
  CHECK(trivial.verdict.valid);
  CHECK(trivial.group_representation.value_or(false));

  GroupoidAlgebroid bg2 = point;
  bg2.groupoid = DeskGroupoid::cyclic(2);
  bg2.psi.assign(2, PolyMatrix(0, 0, 0));
  const RepresentationPresentation E = RepresentationPresentation::trivial(bg2.algebroid, 1);
  const GroupoidRepVerdict sign = verify_groupoid_rep({bg2, E, {scalar(1), scalar(-1)}});
  CHECK(sign.verdict.valid);
  CHECK(sign.group_representation == std::optional<bool>(true));

  const GroupoidRepVerdict bad = verify_groupoid_rep({bg2, E, {scalar(1), scalar(2)}});
  CHECK_FALSE(bad.verdict.valid);
  CHECK(bad.group_representation == std::optional<bool>(false));

  // Sign character on the line with ∇ = 0 over the tangent algebroid: ∇-compatible.
  const GroupoidAlgebroid refl = reflected_tangent();
  const RepresentationPresentation Et = RepresentationPresentation::trivial(refl.algebroid, 1);
  const GroupoidRepVerdict line = verify_groupoid_rep({refl, Et, {scalar(1, 1), scalar(-1, 1)}});
  CHECK(line.verdict.valid);
  CHECK_FALSE(line.group_representation.has_value());

  // ∇_{∂x} ε = ε is not invariant under x ↦ −x.
  RepresentationPresentation twisted = Et;
  twisted.gamma[0][0] = scalar(1, 1);
  CHECK_FALSE(verify_groupoid_rep({refl, twisted, {scalar(1, 1), scalar(1, 1)}}).verdict.valid);
}

TEST_CASE("finite group representations match homomorphisms") {
  gen::Rng rng(8);
  for (std::size_t order : {2, 3}) {
    GroupoidAlgebroid BG{DeskGroupoid::cyclic(order), AlgebroidPresentation::zero(ChartBase::point(), 0), {}};
    BG.psi.assign(order, PolyMatrix(0, 0, 0));
    int hom = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t m = 1 + rng() % 2;
      std::vector<PolyMatrix> psi{PolyMatrix::identity(m, 0)};
      if (trial % 3 == 0) {
        // Powers of a generator of order dividing |G|.
        PolyMatrix gen1 = m == 1 ? scalar(order == 2 ? -1 : 1) : order == 2 ? PolyMatrix::constant({{0, 1}, {1, 0}}, 0)
                                                                             : PolyMatrix::constant({{0, -1}, {1, -1}}, 0);
        for (std::size_t k = 1; k < order; ++k) psi.push_back(psi.back() * gen1);
      } else {
        for (std::size_t k = 1; k < order; ++k) {
          PolyMatrix M(m, m, 0);
          for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) M.at(a, b) = Polynomial::constant(0, Rational(static_cast<int>(rng() % 3) - 1));
          psi.push_back(M);
        }
      }
      bool invertible = true;
      for (const auto& M : psi) invertible = invertible && !determinant(M).is_zero();
      const bool expected = invertible && multiplicative(BG.groupoid, psi);
      hom += expected;
      const GroupoidRepVerdict v = verify_groupoid_rep({BG, RepresentationPresentation::trivial(BG.algebroid, m), psi});
      CHECK(v.verdict.valid == expected);
      CHECK(v.group_representation == std::optional<bool>(expected));
    }
    CHECK(hom >= 10);
  }
}
