#include "algebroidkit/pullback/pullback.hpp"

#include <string>

#include "algebroidkit/algebroid/forms.hpp"
#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

using Vector = std::vector<Polynomial>;

Vector row_of(const PolyMatrix& m, std::size_t i) {
  Vector r;
  for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j));
  return r;
}

Vector column_of(const PolyMatrix& m, std::size_t j) {
  Vector c;
  for (std::size_t i = 0; i < m.rows(); ++i) c.push_back(m.at(i, j));
  return c;
}

PolyMatrix matrix_from_rows(const std::vector<Vector>& rows, std::size_t cols, std::size_t nvars) {
  PolyMatrix m(rows.size(), cols, nvars);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// v(f) for a vector field with coordinate components v.
Polynomial apply_field(const Vector& v, const Polynomial& f) {
  Polynomial out(f.nvars());
  for (std::size_t nu = 0; nu < v.size(); ++nu)
    if (!v[nu].is_zero()) out += v[nu] * f.derive(nu);
  return out;
}

Vector field_bracket(const Vector& v, const Vector& w) {
  Vector out;
  for (std::size_t mu = 0; mu < v.size(); ++mu) out.push_back(apply_field(v, w[mu]) - apply_field(w, v[mu]));
  return out;
}

Vector mat_vec(const PolyMatrix& m, const Vector& v, std::size_t nvars) {
  Vector out(m.rows(), Polynomial(nvars));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && !v[j].is_zero()) out[i] += m.at(i, j) * v[j];
  return out;
}

Vector row_times(const Vector& row, const PolyMatrix& m, std::size_t nvars) {
  Vector out(m.cols(), Polynomial(nvars));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!row[i].is_zero() && !m.at(i, j).is_zero()) out[j] += row[i] * m.at(i, j);
  return out;
}

// Bracket of pairs (v, ξ), (w, η) in TW ⊕ g*A over W, with A-structure functions pulled along g.
std::pair<Vector, Vector> pair_bracket(const Vector& v, const Vector& xi, const Vector& w, const Vector& eta,
                                       const LocalStructure& A, const PolyMap& g) {
  const std::size_t nv = g.source_dim;
  Vector vec = field_bracket(v, w);
  Vector coeff(A.rank(), Polynomial(nv));
  for (std::size_t p = 0; p < A.rank(); ++p) {
    if (xi[p].is_zero()) continue;
    for (std::size_t q = 0; q < A.rank(); ++q) {
      if (eta[q].is_zero() || p == q) continue;
      const Polynomial pq = xi[p] * eta[q];
      for (std::size_t s = 0; s < A.rank(); ++s) {
        const Polynomial c = A.bracket(p, q, s);
        if (!c.is_zero()) coeff[s] += pq * g.pull(c);
      }
    }
  }
  for (std::size_t s = 0; s < A.rank(); ++s) coeff[s] += apply_field(v, eta[s]) - apply_field(w, xi[s]);
  return {vec, coeff};
}

void require_single(const AlgebroidPresentation& A, std::size_t dim, const char* what) {
  A.check_shapes();
  if (!A.base.is_single_chart()) throw DimensionError(std::string(what) + ": algebroid must live over a single chart");
  if (A.base.dim() != dim) {
    throw DimensionError(std::string(what) + ": algebroid lives over dimension " + std::to_string(A.base.dim()) +
                         ", expected " + std::to_string(dim));
  }
}

AlgebroidPresentation over_chart(LocalStructure local, std::size_t dim) {
  AlgebroidPresentation out;
  out.base = dim == 0 ? ChartBase::point() : ChartBase::affine(dim);
  out.rank = local.rank();
  out.pieces.push_back(std::move(local));
  return out;
}

AlgebroidMorphism over_identity(const AlgebroidPresentation& src, const AlgebroidPresentation& tgt, PolyMatrix m) {
  return AlgebroidMorphism{src, tgt, {MorphismPiece{0, 0, PolyMap::identity(src.base.dim()), std::move(m), std::nullopt}}};
}

// Coordinates of (v, ξ) in the frame of P pulled along g, with the Jacobian of Φ precomputed.
Section coordinates(const Pullback& P, const PolyMatrix& jphi, const PolyMap& g, const Vector& v, const Vector& xi) {
  const std::size_t n = P.f.n, k = P.f.k, r = P.base.rank, nv = g.source_dim;
  if (v.size() != n + k || xi.size() != r) throw DimensionError("pullback coordinates: pair has the wrong shape");
  const PolyMatrix& anchor = P.algebroid.local().anchor;
  Vector residual = v;
  for (std::size_t p = 0; p < r; ++p) {
    if (xi[p].is_zero()) continue;
    for (std::size_t mu = 0; mu < n + k; ++mu) {
      const Polynomial& a = anchor.at(k + p, mu);
      if (!a.is_zero()) residual[mu] -= xi[p] * g.pull(a);
    }
  }
  const Vector split = mat_vec(jphi.pull(g), residual, nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (!split[i].is_zero()) {
      throw PreconditionError("pair is not a section of the pullback: f_*v ≠ a(ξ) in coordinate " +
                              coordinate_name(i) + ", residue " + split[i].str());
    }
  }
  Section out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(split[n + j]);
  for (std::size_t p = 0; p < r; ++p) out.push_back(xi[p]);
  return out;
}

}  // namespace

Pullback pullback_algebroid(const SplitSubmersion& f, const AlgebroidPresentation& A) {
  require_single(A, f.n, "pullback");
  const std::size_t n = f.n, k = f.k, N = n + k, r = A.rank;
  const PolyMap fmap = f.map();
  const PolyMatrix jinv = f.phi_inv.jacobian().pull(f.phi);  // columns: ∂/∂y_i then ∂/∂u_j
  const LocalStructure& a = A.local();

  Pullback P{f, A, {}, PolyMatrix(k + r, r, N)};
  LocalStructure L(k + r, N);
  std::vector<Vector> fields;
  for (std::size_t j = 0; j < k; ++j) fields.push_back(column_of(jinv, n + j));
  for (std::size_t p = 0; p < r; ++p) {
    Vector v(N, Polynomial(N));
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial b = fmap.pull(a.anchor.at(p, i));
      if (b.is_zero()) continue;
      for (std::size_t mu = 0; mu < N; ++mu) v[mu] += b * jinv.at(mu, i);
    }
    fields.push_back(std::move(v));
    P.to_base.at(k + p, p) = Polynomial::constant(N, 1);
  }
  for (std::size_t l = 0; l < k + r; ++l)
    for (std::size_t mu = 0; mu < N; ++mu) L.anchor.at(l, mu) = fields[l][mu];
  P.algebroid = over_chart(L, N);

  const PolyMatrix jphi = f.phi.jacobian();
  const PolyMap id = PolyMap::identity(N);
  for (std::size_t i = 0; i < k + r; ++i) {
    for (std::size_t j = i + 1; j < k + r; ++j) {
      auto [w, h] = pair_bracket(fields[i], row_of(P.to_base, i), fields[j], row_of(P.to_base, j), a, fmap);
      const Section c = coordinates(P, jphi, id, w, h);
      for (std::size_t s = 0; s < k + r; ++s)
        if (!c[s].is_zero()) L.bracket.set(i, j, s, c[s]);
    }
  }
  P.algebroid = over_chart(std::move(L), N);
  return P;
}

AlgebroidMorphism pullback_projection(const Pullback& P) {
  return AlgebroidMorphism{P.algebroid, P.base, {MorphismPiece{0, 0, P.f.map(), P.to_base, std::nullopt}}};
}

Section pullback_coordinates(const Pullback& P, const PolyMap& g, const std::vector<Polynomial>& v, const Section& xi) {
  if (g.target_dim() != P.f.source_dim()) throw DimensionError("pullback coordinates: map lands in the wrong chart");
  return coordinates(P, P.f.phi.jacobian(), g, v, xi);
}

AlgebroidMorphism pullback_morphism(const SplitSubmersion& f, const AlgebroidMorphism& rho) {
  if (rho.pieces.size() != 1 || !rho.pieces[0].base_map.is_identity()) {
    throw PreconditionError("pullback of a morphism: expected a single piece over the identity");
  }
  const Pullback PA = pullback_algebroid(f, rho.source);
  const Pullback PB = pullback_algebroid(f, rho.target);
  const std::size_t N = f.source_dim();
  const PolyMatrix rho_up = rho.pieces[0].matrix.pull(f.map());
  const PolyMatrix jphi = f.phi.jacobian();
  const PolyMap id = PolyMap::identity(N);
  std::vector<Vector> rows;
  for (std::size_t l = 0; l < PA.algebroid.rank; ++l) {
    const Vector eta = row_times(row_of(PA.to_base, l), rho_up, N);
    rows.push_back(coordinates(PB, jphi, id, row_of(PA.algebroid.local().anchor, l), eta));
  }
  return over_identity(PA.algebroid, PB.algebroid, matrix_from_rows(rows, PB.algebroid.rank, N));
}

AlgebroidMorphism canonical_reframe(const Pullback& from, const Pullback& to) {
  if (!(from.f.map() == to.f.map()) || !(from.base == to.base)) {
    throw PreconditionError("canonical reframe: presentations pull back different data");
  }
  const std::size_t N = from.f.source_dim();
  const PolyMatrix jphi = to.f.phi.jacobian();
  const PolyMap id = PolyMap::identity(N);
  std::vector<Vector> rows;
  for (std::size_t l = 0; l < from.algebroid.rank; ++l)
    rows.push_back(coordinates(to, jphi, id, row_of(from.algebroid.local().anchor, l), row_of(from.to_base, l)));
  return over_identity(from.algebroid, to.algebroid, matrix_from_rows(rows, to.algebroid.rank, N));
}

AlgebroidPresentation etale_pullback(const EtaleMap& phi, const AlgebroidPresentation& A) {
  check_etale(phi);
  const std::size_t n = phi.map.source_dim;
  require_single(A, n, "étale pullback");
  const LocalStructure& a = A.local();
  LocalStructure L(A.rank, n);
  L.anchor = a.anchor.pull(phi.map) * phi.jacobian_inverse.transpose();
  for (std::size_t i = 0; i < A.rank; ++i)
    for (std::size_t j = i + 1; j < A.rank; ++j)
      for (std::size_t s = 0; s < A.rank; ++s) {
        const Polynomial c = a.bracket(i, j, s);
        if (!c.is_zero()) L.bracket.set(i, j, s, phi.map.pull(c));
      }
  return over_chart(std::move(L), n);
}

AlgebroidMorphism etale_comparison(const Pullback& P, const EtaleMap& phi) {
  if (P.f.k != 0 || !(P.f.map() == phi.map)) {
    throw PreconditionError("étale comparison: pullback must be along the same map with k = 0");
  }
  const AlgebroidPresentation E = etale_pullback(phi, P.base);
  // Both frames are the pulled-back frame of A and both anchors are the unique lift of f*a.
  return over_identity(P.algebroid, E, PolyMatrix::identity(P.base.rank, P.f.source_dim()));
}

FactorResult factor_through_pullback(const AlgebroidMorphism& psi_tilde, const Pullback& P, const PolyMap& psi_prime) {
  if (psi_tilde.pieces.size() != 1) throw PreconditionError("factorization: morphism must have a single piece");
  if (!(psi_tilde.target == P.base)) throw DimensionError("factorization: morphism does not land in the pulled-back algebroid");
  const MorphismPiece& piece = psi_tilde.pieces[0];
  if (!(P.f.map().after(psi_prime) == piece.base_map)) {
    throw PreconditionError("factorization identity ψ = φ∘ψ′ fails");
  }
  const AlgebroidPresentation& C = psi_tilde.source;
  const std::size_t W = psi_prime.source_dim;
  require_single(C, W, "factorization");
  const PolyMatrix jpsi = psi_prime.jacobian();
  const PolyMatrix jphi = P.f.phi.jacobian();
  std::vector<Vector> rows;
  for (std::size_t l = 0; l < C.rank; ++l) {
    const Vector v = mat_vec(jpsi, row_of(C.local().anchor, l), W);
    rows.push_back(coordinates(P, jphi, psi_prime, v, row_of(piece.matrix, l)));
  }
  FactorResult out;
  out.morphism = AlgebroidMorphism{
      C, P.algebroid, {MorphismPiece{0, 0, psi_prime, matrix_from_rows(rows, P.algebroid.rank, W), std::nullopt}}};
  // Two lifts with the same A-component differ by Σ z_j V_j with vanishing anchor; z = 0 iff the
  // vertical anchor rows are independent.
  std::vector<std::size_t> vrows, cols;
  for (std::size_t j = 0; j < P.f.k; ++j) vrows.push_back(j);
  for (std::size_t mu = 0; mu < P.f.source_dim(); ++mu) cols.push_back(mu);
  out.vertical_rank = generic_rank(P.algebroid.local().anchor.submatrix(vrows, cols));
  out.unique = out.vertical_rank == P.f.k;
  return out;
}

CompositionIso composition_iso(const SplitSubmersion& phi1, const SplitSubmersion& phi2, const AlgebroidPresentation& A) {
  CompositionIso out;
  out.composite = pullback_algebroid(compose(phi2, phi1), A);
  out.inner = pullback_algebroid(phi2, A);
  out.outer = pullback_algebroid(phi1, out.inner.algebroid);
  const std::size_t N = phi1.source_dim();
  const PolyMap f1 = phi1.map();
  const PolyMatrix j1 = f1.jacobian();
  const PolyMatrix jinner = phi2.phi.jacobian();
  const PolyMatrix jouter = phi1.phi.jacobian();
  const PolyMap id = PolyMap::identity(N);
  std::vector<Vector> rows;
  for (std::size_t l = 0; l < out.composite.algebroid.rank; ++l) {
    const Vector v = row_of(out.composite.algebroid.local().anchor, l);
    const Vector eta = coordinates(out.inner, jinner, f1, mat_vec(j1, v, N), row_of(out.composite.to_base, l));
    rows.push_back(coordinates(out.outer, jouter, id, v, eta));
  }
  out.iso = over_identity(out.composite.algebroid, out.outer.algebroid,
                          matrix_from_rows(rows, out.outer.algebroid.rank, N));
  return out;
}

PentagonResult pentagon(const SplitSubmersion& phi1, const SplitSubmersion& phi2, const SplitSubmersion& phi3,
                        const AlgebroidPresentation& A) {
  PentagonResult out;
  const CompositionIso c_32_1 = composition_iso(phi1, compose(phi3, phi2), A);
  const CompositionIso c_3_2 = composition_iso(phi2, phi3, A);
  out.left = compose(pullback_morphism(phi1, c_3_2.iso), c_32_1.iso);

  const CompositionIso c_3_21 = composition_iso(compose(phi2, phi1), phi3, A);
  const CompositionIso c_2_1 = composition_iso(phi1, phi2, c_3_2.inner.algebroid);
  out.right = compose(c_2_1.iso, c_3_21.iso);

  out.agree = same_map(out.left, out.right);
  const PolyMatrix& l = out.left.pieces[0].matrix;
  const PolyMatrix& r = out.right.pieces[0].matrix;
  if (l.rows() != r.rows() || l.cols() != r.cols()) {
    out.verdict.fail("pentagon", "composites have different shapes", Polynomial(phi1.source_dim()));
    return out;
  }
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) {
      const Polynomial d = l.at(i, j) - r.at(i, j);
      if (!d.is_zero()) {
        out.verdict.fail("pentagon entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                         "φ₁!(c_{φ₃,φ₂})∘c_{φ₃φ₂,φ₁} differs from c_{φ₂,φ₁}∘c_{φ₃,φ₂φ₁}", d);
      }
    }
  if (out.verdict.valid) out.verdict.record("φ₁!(c_{φ₃,φ₂})∘c_{φ₃φ₂,φ₁} = c_{φ₂,φ₁}∘c_{φ₃,φ₂φ₁}");
  return out;
}

RepresentationPresentation pullback_representation(const SplitSubmersion& f, const RepresentationPresentation& R) {
  const Verdict v = verify_representation(R);
  if (!v.valid) throw PreconditionError("pullback representation: input connection is not flat");
  const Pullback P = pullback_algebroid(f, R.algebroid);
  const std::size_t N = f.source_dim(), m = R.fiber_rank;
  RepresentationPresentation out;
  out.algebroid = P.algebroid;
  out.fiber_rank = m;
  Connection gamma;
  for (std::size_t j = 0; j < f.k; ++j) gamma.push_back(PolyMatrix(m, m, N));
  for (std::size_t p = 0; p < R.algebroid.rank; ++p) gamma.push_back(R.gamma.at(0).at(p).pull(f.map()));
  out.gamma.push_back(std::move(gamma));
  return out;
}

TransversePullback transverse_pullback(const PolyMap& g, const AlgebroidPresentation& A) {
  const std::size_t W = g.source_dim, X = g.target_dim(), r = A.rank;
  require_single(A, X, "transverse pullback");
  const LocalStructure& a = A.local();
  // K = [J_g | −g*(a)ᵀ], X × (W + r); its kernel is the fibre of g^!A.
  const PolyMatrix jg = g.jacobian();
  PolyMatrix K(X, W + r, W);
  for (std::size_t mu = 0; mu < X; ++mu) {
    for (std::size_t nu = 0; nu < W; ++nu) K.at(mu, nu) = jg.at(mu, nu);
    for (std::size_t p = 0; p < r; ++p) K.at(mu, W + p) = -g.pull(a.anchor.at(p, mu));
  }
  std::optional<PolyMatrix> frame = unit_kernel_frame(K);
  if (!frame) throw ConstructionError("transverse pullback: no unit minor, the map is not transverse to the anchor");
  TransversePullback out{g, A, {}, frame->transpose()};
  const std::size_t rank = out.frame.rows();
  LocalStructure L(rank, W);
  std::vector<Vector> vs, xis;
  for (std::size_t l = 0; l < rank; ++l) {
    Vector v, xi;
    for (std::size_t nu = 0; nu < W; ++nu) v.push_back(out.frame.at(l, nu));
    for (std::size_t p = 0; p < r; ++p) xi.push_back(out.frame.at(l, W + p));
    for (std::size_t nu = 0; nu < W; ++nu) L.anchor.at(l, nu) = v[nu];
    vs.push_back(std::move(v));
    xis.push_back(std::move(xi));
  }
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = i + 1; j < rank; ++j) {
      auto [w, h] = pair_bracket(vs[i], xis[i], vs[j], xis[j], a, g);
      PolyMatrix target(1, W + r, W);
      for (std::size_t nu = 0; nu < W; ++nu) target.at(0, nu) = w[nu];
      for (std::size_t p = 0; p < r; ++p) target.at(0, W + p) = h[p];
      std::optional<PolyMatrix> z = solve_rows(out.frame, target);
      if (!z) throw ConstructionError("transverse pullback: bracket of frame pairs left the kernel frame");
      for (std::size_t s = 0; s < rank; ++s)
        if (!z->at(0, s).is_zero()) L.bracket.set(i, j, s, z->at(0, s));
    }
  }
  out.algebroid = over_chart(std::move(L), W);
  return out;
}

}  // namespace algebroidkit
