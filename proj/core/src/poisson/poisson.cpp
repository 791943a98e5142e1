#include "algebroidkit/poisson/poisson.hpp"

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/algebroid/morphism.hpp"
#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

std::string bivector_name(const IndexTuple& I) {
  std::string s;
  for (std::size_t mu : I) s += (s.empty() ? "∂" : "∧∂") + coordinate_name(mu);
  return s;
}

// {x_i,{x_j,x_k}} + cyclic, with {x_i, f} = Σ_ν Π_{iν} ∂_ν f.
Polynomial coordinate_jacobiator(const PolyMatrix& M, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = M.rows();
  Polynomial out(n);
  const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
  for (const auto& c : cyc)
    for (std::size_t nu = 0; nu < n; ++nu)
      if (!M.at(c[0], nu).is_zero()) out += M.at(c[0], nu) * M.at(c[1], c[2]).derive(nu);
  return out;
}

PolyMatrix negate(const PolyMatrix& M) { return Polynomial::constant(M.nvars(), Rational(-1)) * M; }

}  // namespace

Polynomial PoissonStructure::bracket(const Polynomial& f, const Polynomial& g) const {
  const std::size_t n = pi_.nvars;
  if (f.nvars() != n || g.nvars() != n) throw DimensionError("Poisson bracket of functions on another chart");
  Polynomial out(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    const Polynomial df = f.derive(mu);
    if (df.is_zero()) continue;
    for (std::size_t nu = 0; nu < n; ++nu)
      if (mu != nu) out += pi_.value({mu, nu}) * df * g.derive(nu);
  }
  return out;
}

PoissonCheck verify_poisson(const PolyVectorField& pi) {
  if (pi.degree != 2) throw DimensionError("Poisson structures are bivectors");
  if (pi.components.size() != binomial(pi.nvars, 2)) throw DimensionError("bivector has the wrong number of components");
  PoissonCheck out;
  out.schouten_square = schouten_bracket(pi, pi);
  const auto triples = increasing_tuples(pi.nvars, 3);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const Polynomial& c = out.schouten_square.components[t];
    if (!c.is_zero()) out.verdict.fail("[Π,Π] at " + bivector_name(triples[t]), "Schouten square does not vanish", c);
  }
  const bool schouten_zero = out.verdict.valid;
  if (schouten_zero) out.verdict.record("[Π,Π] = 0");
  const PolyMatrix M = pi.matrix();
  bool jacobi_zero = true;
  for (const auto& T : triples) jacobi_zero = jacobi_zero && coordinate_jacobiator(M, T[0], T[1], T[2]).is_zero();
  if (jacobi_zero) out.verdict.record("Jacobi identity of {,} on all coordinate triples");
  if (jacobi_zero != schouten_zero) {
    Polynomial witness(pi.nvars);
    for (const auto& T : triples)
      if (witness.is_zero()) witness = coordinate_jacobiator(M, T[0], T[1], T[2]);
    out.verdict.fail("formulations", "[Π,Π] = 0 and the coordinate Jacobi identity disagree",
                     witness.is_zero() ? Polynomial::constant(pi.nvars, Rational(1)) : witness);
  }
  if (out.verdict.valid) out.structure = PoissonStructure(pi);
  return out;
}

AlgebroidPresentation cotangent_algebroid(const PoissonStructure& P) {
  const std::size_t n = P.dim();
  const PolyMatrix M = P.bivector().matrix();
  LocalStructure L(n, n);
  L.anchor = M;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) L.bracket.set(i, j, k, M.at(i, j).derive(k));
  return AlgebroidPresentation::single(std::move(L));
}

PoissonStructure linear_poisson_on_dual(const AlgebroidPresentation& A) {
  if (!A.base.is_single_chart()) throw PreconditionError("dual Poisson structure: the algebroid must live on one chart");
  if (!verify_algebroid(A).valid) throw PreconditionError("dual Poisson structure: the algebroid fails verification");
  const LocalStructure& L = A.local();
  const std::size_t n = L.dim(), r = L.rank(), N = n + r;
  PolyMatrix M(N, N, N);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      const Polynomial a = L.anchor.at(i, mu).embed(N);
      M.at(n + i, mu) = a;
      M.at(mu, n + i) = -a;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      Polynomial c(N);
      for (std::size_t k = 0; k < r; ++k) c += L.bracket(i, j, k).embed(N) * Polynomial::variable(N, n + k);
      M.at(n + i, n + j) = c;
    }
  }
  PoissonCheck check = verify_poisson(PolyVectorField::bivector(M));
  if (!check.structure) throw ConstructionError("dual Poisson structure of a valid algebroid fails verification");
  return *check.structure;
}

Verdict check_invariant_poisson(const PoissonStructure& P, const DeskGroupoid& G) {
  const std::size_t n = P.dim();
  if (G.dim != n) throw DimensionError("groupoid acts on a chart of another dimension");
  const PolyMatrix M = P.bivector().matrix();
  Verdict v;
  for (std::size_t g = 0; g < G.order(); ++g) {
    const PolyMatrix J = G.jacobian(g);
    const PolyMatrix diff = J * M * J.transpose() - M.pull(G.action[g]);
    bool ok = true;
    for (std::size_t mu = 0; mu < n && ok; ++mu)
      for (std::size_t nu = mu + 1; nu < n && ok; ++nu)
        if (!diff.at(mu, nu).is_zero()) {
          v.fail(arrow_label(g) + " at " + bivector_name({mu, nu}), "g_*Π differs from Π", diff.at(mu, nu));
          ok = false;
        }
    if (ok) v.record("g_*Π = Π for " + arrow_label(g));
  }
  return v;
}

SymplecticResult symplectic_to_poisson(const PolyMatrix& omega, const PolyMatrix& omega_inverse, int cap) {
  const std::size_t n = omega.rows();
  if (omega.cols() != n || omega.nvars() != n || omega_inverse.rows() != n || omega_inverse.cols() != n ||
      omega_inverse.nvars() != n) {
    throw DimensionError("symplectic form and inverse must be n × n over Affine(n)");
  }
  if (!(omega == negate(omega.transpose()))) throw PreconditionError("ω is not skew");
  for (const auto& T : increasing_tuples(n, 3)) {
    const std::size_t l = T[0], m = T[1], k = T[2];
    const Polynomial d = omega.at(m, k).derive(l) + omega.at(k, l).derive(m) + omega.at(l, m).derive(k);
    if (!d.is_zero()) throw PreconditionError("ω is not closed: dω(∂" + coordinate_name(l) + ",∂" + coordinate_name(m) +
                                              ",∂" + coordinate_name(k) + ") = " + d.str());
  }
  const PolyMatrix I = PolyMatrix::identity(n, n);
  if (!(omega * omega_inverse == I) || !(omega_inverse * omega == I)) {
    throw PreconditionError("the supplied matrix is not a two-sided inverse of ω");
  }
  const PolyMatrix Pi = negate(omega_inverse);
  PoissonCheck check = verify_poisson(PolyVectorField::bivector(Pi));
  if (!check.structure) throw ConstructionError("Poisson bivector of a symplectic form fails verification");

  SymplecticResult out{*check.structure, check.verdict, {}, {}};
  Verdict& cert = out.certificate;
  const AlgebroidPresentation T = cotangent_algebroid(out.poisson);
  const AlgebroidPresentation TX = tangent_algebroid(n);
  const PolyMap id = PolyMap::identity(n);
  const PolyMatrix back = negate(omega);
  if (Pi * back == I && back * Pi == I) {
    cert.record("Π♯ has the polynomial inverse −ω♭");
  } else {
    cert.fail("anchor", "−ω♭ does not invert Π♯", determinant(Pi));
  }
  cert.absorb(check_morphism(anchor_morphism(T)), "Π♯: T*_Π → TX");
  cert.absorb(check_morphism(AlgebroidMorphism{TX, T, {MorphismPiece{0, 0, id, back, std::nullopt}}}),
              "−ω♭: TX → T*_Π");

  const Grading total = Grading::preset("total", n, n);
  const GradedComplex dT = de_rham_complex(T.local(), total, cap);
  const GradedComplex dX = de_rham_complex(TX.local(), total, cap);
  for (int grade = 0; grade <= cap; ++grade) {
    const auto& cT = dT.grades.at(grade);
    const auto& cX = dX.grades.at(grade);
    std::vector<RatMatrix> rho;
    bool ok = true;
    for (std::size_t k = 0; k <= n; ++k) {
      rho.push_back(graded_pullback(Pi, id, total, total, grade, k));
      if (rho[k].rows() != rho[k].cols() || rank(rho[k]) != rho[k].rows()) {
        cert.fail("grade " + std::to_string(grade) + ", degree " + std::to_string(k), "anchor pullback is not invertible",
                  Polynomial::constant(n, Rational(static_cast<long>(rho[k].rows()) - static_cast<long>(rank(rho[k])))));
        ok = false;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!(cT.differentials[k] * rho[k] == rho[k + 1] * cX.differentials[k])) {
        cert.fail("grade " + std::to_string(grade) + ", degree " + std::to_string(k),
                  "anchor pullback does not commute with the differentials", Polynomial::constant(n, Rational(1)));
        ok = false;
      }
    }
    if (ok) cert.record("grade " + std::to_string(grade) + ": Π♯^* is a cochain isomorphism Ω(TX) → Ω(T*_Π)");
  }
  out.cotangent_betti = complex_cohomology(dT);
  out.tangent_betti = complex_cohomology(dX);
  if (out.cotangent_betti == out.tangent_betti) {
    cert.record("graded Betti numbers of T*_Π and TX agree");
  } else {
    cert.fail("cohomology", "graded Betti numbers of T*_Π and TX differ", Polynomial::constant(n, Rational(1)));
  }
  return out;
}

}  // namespace algebroidkit
