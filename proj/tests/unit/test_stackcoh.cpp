#include <doctest.h>

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/error.hpp"
#include "algebroidkit/stackcoh/cech.hpp"
#include "oracles/generators.hpp"

using namespace algebroidkit;

namespace {

GroupoidAlgebroid over_point(const DeskGroupoid& G, const AlgebroidPresentation& A, std::vector<PolyMatrix> psi) {
  return {G, A, std::move(psi)};
}

GroupoidAlgebroid trivial_sl2() { return over_point(DeskGroupoid::cyclic(1), gen::split_sl2(), {PolyMatrix::identity(3, 0)}); }

GroupoidAlgebroid sign_line() {
  return over_point(DeskGroupoid::cyclic(2), abelian_lie_algebra(1),
                    {PolyMatrix::constant({{1}}, 0), PolyMatrix::constant({{-1}}, 0)});
}

GroupoidAlgebroid swap_plane() {
  return over_point(DeskGroupoid::cyclic(2), abelian_lie_algebra(2),
                    {PolyMatrix::identity(2, 0), PolyMatrix::constant({{0, 1}, {1, 0}}, 0)});
}

Grading flat(const GroupoidAlgebroid& GA, const std::string& name = "polynomial") {
  return Grading::preset(name, GA.groupoid.dim, GA.algebroid.rank);
}

std::vector<std::size_t> bettis(const std::vector<TotalBetti>& b) {
  std::vector<std::size_t> out;
  for (const auto& t : b) out.push_back(t.betti);
  return out;
}

// Group cochains of ℤ/2 with trivial coefficients ℚ, written out by hand.
RatMatrix z2_trivial_delta(std::size_t n) {
  const std::size_t rows = std::size_t{1} << (n + 1), cols = std::size_t{1} << n;
  RatMatrix d(rows, cols);
  for (std::size_t row = 0; row < rows; ++row) {
    std::vector<std::size_t> s(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s[i] = (row >> (n - i)) & 1u;
    auto col = [&](const std::vector<std::size_t>& t) {
      std::size_t c = 0;
      for (std::size_t x : t) c = 2 * c + x;
      return c;
    };
    d.at(row, col({s.begin() + 1, s.end()})) += Rational(1);
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<std::size_t> t(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i - 1));
      t.push_back(s[i - 1] ^ s[i]);
      t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 1), s.end());
      d.at(row, col(t)) += Rational(i % 2 == 0 ? 1 : -1);
    }
    d.at(row, col({s.begin(), s.end() - 1})) += Rational((n + 1) % 2 == 0 ? 1 : -1);
  }
  return d;
}

}  // namespace

TEST_CASE("nerves") {
  const NerveData trivial = build_nerve(DeskGroupoid::cyclic(1), 3);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(trivial.component_count(n) == 1);
  CHECK(trivial.level(2).component_count() == 1);
  CHECK(verify_nerve(trivial).valid);

  const NerveData z2 = build_nerve(DeskGroupoid::cyclic(2), 4);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(z2.component_count(n) == (std::size_t{1} << n));
  CHECK(verify_nerve(z2).valid);
  CHECK(z2.level(1) == DeskGroupoid::cyclic(2).arrow_space());

  const DeskGroupoid refl = gen::generate_group({PolyMap::affine({{-1}}, {Rational(0)})}, 1);
  const NerveData line = build_nerve(refl, 3);
  CHECK(line.component_count(3) == 8);
  CHECK(line.level(2).dim(3) == 1);
  // d_0 on (g1, g2) drops g1 and moves the coordinate by g1⁻¹.
  CHECK(line.faces[2][0].base_map[2] == refl.action[1]);
  CHECK(line.faces[2][0].component[2] == 0);
  CHECK(line.faces[2][1].component[3] == 0);
  CHECK(line.faces[2][2].base_map[3].is_identity());
  const Verdict v = verify_nerve(line);
  CHECK(v.valid);
  CHECK(v.certificate.size() == 3 + 6);

  NerveData broken = z2;
  broken.faces[2][1].component[1] = 0;
  const Verdict bad = verify_nerve(broken);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.witnesses[0].residue.is_zero());

  NerveData moved = line;
  moved.faces[2][0].base_map[2] = PolyMap::identity(1);
  CHECK_FALSE(verify_nerve(moved).valid);
}

TEST_CASE("Čech complex examples") {
  const GroupoidAlgebroid sl2 = trivial_sl2();
  const CechDoubleComplex C = build_cech_complex(sl2, 3, 3, flat(sl2), 0);
  REQUIRE(C.grades.size() == 1);
  const DoubleComplex& D = C.grades.at(0);
  const GradedComplex ce = de_rham_complex(sl2.algebroid.local(), flat(sl2), 0);
  for (std::size_t k = 0; k < 3; ++k) CHECK(D.horizontal[0][k] == ce.grades.at(0).differentials[k]);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(D.dims[n] == std::vector<std::size_t>{1, 3, 3, 1});
  // One-point nerve: vertical maps alternate 0, 1, 0.
  CHECK(D.vertical[0][1].is_zero());
  CHECK(D.vertical[1][1] == RatMatrix::identity(3));
  CHECK(D.vertical[2][1].is_zero());
  CHECK(verify_cech_complex(sl2, C).valid);

  const GroupoidAlgebroid sign = sign_line();
  const CechDoubleComplex S = build_cech_complex(sign, 3, 3, flat(sign), 0);
  for (std::size_t n = 0; n <= 3; ++n)
    CHECK(S.grades.at(0).dims[n] == std::vector<std::size_t>{std::size_t{1} << n, std::size_t{1} << n, 0, 0});
  CHECK(verify_cech_complex(sign, S).valid);
  // Column 0 is the group cochain complex with trivial coefficients.
  for (std::size_t n = 0; n < 3; ++n) CHECK(S.grades.at(0).vertical[n][0] == z2_trivial_delta(n));
  // Column 1 carries the sign: δ_0 f(g) = T_g f − f with T_{g1} = −1.
  CHECK(S.grades.at(0).vertical[0][1] == RatMatrix::from_rows({{Rational(0)}, {Rational(-2)}}));

  const GroupoidAlgebroid swap = swap_plane();
  const CechDoubleComplex W = build_cech_complex(swap, 3, 3, flat(swap), 0);
  for (std::size_t n = 0; n <= 3; ++n) {
    const std::size_t c = std::size_t{1} << n;
    CHECK(W.grades.at(0).dims[n] == std::vector<std::size_t>{c, 2 * c, c, 0});
  }
  CHECK(verify_cech_complex(swap, W).valid);

  GroupoidAlgebroid doubled = sign;
  doubled.psi[1] = PolyMatrix::constant({{2}}, 0);
  CHECK_THROWS_AS(build_cech_complex(doubled, 2, 2, flat(doubled), 0), PreconditionError);
}

TEST_CASE("inadmissible gradings are rejected") {
  // x ↦ 1 − x does not preserve the total grading.
  GroupoidAlgebroid shifted{gen::generate_group({PolyMap::affine({{-1}}, {Rational(1)})}, 1), tangent_algebroid(1), {}};
  for (std::size_t g = 0; g < 2; ++g) shifted.psi.push_back(shifted.groupoid.jacobian(g).transpose());
  REQUIRE(verify_groupoid_algebroid(shifted).valid);
  try {
    build_cech_complex(shifted, 2, 2, flat(shifted, "total"), 2);
    FAIL("expected a grading error");
  } catch (const GradingError& e) {
    CHECK_FALSE(e.image_term().is_zero());
  }
  // d_A of the tangent algebroid lowers the polynomial grade.
  GroupoidAlgebroid refl = shifted;
  refl.groupoid = gen::generate_group({PolyMap::affine({{-1}}, {Rational(0)})}, 1);
  CHECK_THROWS_AS(build_cech_complex(refl, 2, 2, flat(refl, "polynomial"), 1), GradingError);
  CHECK_NOTHROW(build_cech_complex(refl, 2, 2, flat(refl, "total"), 2));
}

TEST_CASE("invariant complexes") {
  const GroupoidAlgebroid sl2 = trivial_sl2();
  const GradedComplex full = invariant_complex(sl2, flat(sl2), 0);
  CHECK(full.grades.at(0).dims == std::vector<std::size_t>{1, 3, 3, 1});

  const GradedComplex sign = invariant_complex(sign_line(), flat(sign_line()), 0);
  CHECK(sign.grades.at(0).dims == std::vector<std::size_t>{1, 0});
  CHECK(complex_cohomology(sign).at(0) == std::vector<std::size_t>{1, 0});

  const GradedComplex swap = invariant_complex(swap_plane(), flat(swap_plane()), 0);
  CHECK(swap.grades.at(0).dims == std::vector<std::size_t>{1, 1, 0});
  CHECK(complex_cohomology(swap).at(0) == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("total cohomology equals invariant cohomology") {
  const CechComparison a = compare_total_vs_invariants(trivial_sl2(), 4, flat(trivial_sl2()), 0);
  CHECK(a.equal);
  CHECK(bettis(a.total) == std::vector<std::size_t>{1, 0, 0, 1});
  CHECK(a.invariant == std::vector<std::size_t>{1, 0, 0, 1});

  const CechComparison b = compare_total_vs_invariants(sign_line(), 3, flat(sign_line()), 0);
  CHECK(b.equal);
  CHECK(bettis(b.total) == std::vector<std::size_t>{1, 0, 0});
  CHECK(b.invariant == std::vector<std::size_t>{1, 0, 0});

  const CechComparison c = compare_total_vs_invariants(swap_plane(), 3, flat(swap_plane()), 0);
  CHECK(c.equal);
  CHECK(bettis(c.total) == std::vector<std::size_t>{1, 1, 0});
  for (const auto& t : c.total) CHECK(t.reliable);

  // Zero algebroid over finite groups: the cohomology of BG over ℚ.
  for (std::size_t order : {2, 3, 4}) {
    const GroupoidAlgebroid BG{DeskGroupoid::cyclic(order), AlgebroidPresentation::zero(ChartBase::point(), 0),
                               std::vector<PolyMatrix>(order, PolyMatrix(0, 0, 0))};
    const CechComparison z = compare_total_vs_invariants(BG, 4, flat(BG), 0);
    CHECK(z.equal);
    CHECK(bettis(z.total) == std::vector<std::size_t>{1, 0, 0, 0});
  }
}

TEST_CASE("random finite-group comparisons") {
  gen::Rng rng(4242);
  for (int trial = 0; trial < 12; ++trial) {
    const gen::GradedGroupoidAlgebroid s = gen::random_graded_groupoid_algebroid(rng);
    const GroupoidAlgebroid& GA = s.ga;
    CAPTURE(trial);
    CAPTURE(s.grading);
    REQUIRE(verify_groupoid_algebroid(GA).valid);
    const Grading grading = flat(GA, s.grading);
    const int cap = GA.groupoid.dim == 0 ? 0 : 2;

    // Character formula: dim of invariants = average trace of T_g.
    const GradedComplex inv = invariant_complex(GA, grading, cap);
    for (int grade = 0; grade <= cap; ++grade)
      for (std::size_t k = 0; k <= GA.algebroid.rank; ++k) {
        Rational trace;
        for (std::size_t g = 0; g < GA.groupoid.order(); ++g) {
          const RatMatrix T = translation_matrix(GA, g, grading, grade, k);
          for (std::size_t i = 0; i < T.rows(); ++i) trace += T.at(i, i);
        }
        CHECK(trace == Rational(static_cast<long>(inv.grades.at(grade).dims[k] * GA.groupoid.order())));
      }

    const CechComparison cmp = compare_total_vs_invariants(GA, 4, grading, cap);
    CHECK(cmp.equal);
    CHECK(cmp.verdict.valid);
  }
}
