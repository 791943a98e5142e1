#include "algebroidkit/pullback/descent.hpp"

#include <string>

#include "algebroidkit/error.hpp"
#include "algebroidkit/exactalg/rat_matrix.hpp"

namespace algebroidkit {

namespace {

AlgebroidMorphism over_identity(const AlgebroidPresentation& src, const AlgebroidPresentation& tgt, PolyMatrix m) {
  return AlgebroidMorphism{src, tgt, {MorphismPiece{0, 0, PolyMap::identity(src.base.dim()), std::move(m), std::nullopt}}};
}

std::string idx(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string idx(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// Records every nonzero entry of lhs − rhs as a witness.
void compare(Verdict& v, const PolyMatrix& lhs, const PolyMatrix& rhs, const std::string& where, const std::string& what) {
  for (std::size_t a = 0; a < lhs.rows(); ++a)
    for (std::size_t b = 0; b < lhs.cols(); ++b) {
      const Polynomial d = lhs.at(a, b) - rhs.at(a, b);
      if (!d.is_zero()) v.fail(where + " entry " + idx(a, b), what, d);
    }
}

// Identity on y followed by the u-blocks of Affine(n + blocks·k) in the given order.
PolyMap block_permutation(std::size_t n, std::size_t k, const std::vector<std::size_t>& order) {
  const std::size_t dim = n + order.size() * k;
  PolyMap m{dim, {}};
  for (std::size_t i = 0; i < n; ++i) m.images.push_back(Polynomial::variable(dim, i));
  for (std::size_t b : order)
    for (std::size_t j = 0; j < k; ++j) m.images.push_back(Polynomial::variable(dim, n + b * k + j));
  return m;
}

AlgebroidMorphism chain(const std::vector<AlgebroidMorphism>& steps) {
  AlgebroidMorphism acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = compose(steps[i], acc);
  return acc;
}

const CoverOverlap* find_overlap(const CoverDatum& D, std::size_t i, std::size_t j) {
  for (const auto& o : D.overlaps)
    if (o.i == i && o.j == j) return &o;
  return nullptr;
}

struct PairData {
  PolyMatrix theta;  // pulled to the triple chart
  PolyMap into_a;    // triple chart → U_a
  PolyMap into_b;    // triple chart → U_b
};

PairData pair_data(const CoverDatum& D, std::size_t a, std::size_t b, const PolyMap& g, std::size_t triple_dim) {
  if (g.source_dim != triple_dim) throw DimensionError("cover triple: map has the wrong source dimension");
  if (a == b) {
    if (g.target_dim() != D.charts[a].base.dim()) throw DimensionError("cover triple: map into chart " + std::to_string(a) + " has the wrong target");
    return {PolyMatrix::identity(D.charts[a].rank, triple_dim), g, g};
  }
  const CoverOverlap* o = find_overlap(D, a, b);
  if (!o) throw PreconditionError("missing overlap data for " + idx(a, b));
  if (g.target_dim() != o->dim) throw DimensionError("cover triple: map into overlap " + idx(a, b) + " has the wrong target");
  return {o->theta.pull(g), o->to_i.after(g), o->to_j.after(g)};
}

std::vector<CoverTriple> derived_triples(const CoverDatum& D) {
  std::vector<CoverTriple> out;
  for (const auto& o : D.overlaps) {
    if (o.i == o.j) continue;
    const CoverOverlap* back = find_overlap(D, o.j, o.i);
    if (!back) throw PreconditionError("missing overlap data for " + idx(o.j, o.i));
    if (!(back->dim == o.dim && back->to_i == o.to_j && back->to_j == o.to_i)) {
      throw PreconditionError("overlaps " + idx(o.i, o.j) + " and " + idx(o.j, o.i) +
                              " use different charts; supply the triple data explicitly");
    }
    const PolyMap id = PolyMap::identity(o.dim);
    out.push_back(CoverTriple{o.i, o.j, o.i, o.dim, id, id, o.to_i});
  }
  return out;
}

}  // namespace

FibreSquare fibre_square(const SplitSubmersion& phi) {
  const std::size_t n = phi.n, k = phi.k, N = n + k, D2 = n + 2 * k;
  auto var = [&](std::size_t i) { return Polynomial::variable(D2, i); };
  std::vector<Polynomial> y_u, y_w;
  for (std::size_t i = 0; i < n; ++i) {
    y_u.push_back(var(i));
    y_w.push_back(var(i));
  }
  for (std::size_t j = 0; j < k; ++j) {
    y_u.push_back(var(n + j));
    y_w.push_back(var(N + j));
  }
  PolyMap s{D2, {}}, s_inv{D2, {}}, t{D2, {}}, t_inv{D2, {}};
  for (const auto& p : phi.phi_inv.images) s.images.push_back(p.substitute(y_u, D2));
  for (std::size_t j = 0; j < k; ++j) s.images.push_back(var(N + j));
  for (const auto& p : phi.phi.images) s_inv.images.push_back(p.embed(D2, 0));
  for (std::size_t j = 0; j < k; ++j) s_inv.images.push_back(var(N + j));

  for (const auto& p : phi.phi_inv.images) t.images.push_back(p.substitute(y_w, D2));
  for (std::size_t j = 0; j < k; ++j) t.images.push_back(var(n + j));
  for (std::size_t i = 0; i < n; ++i) t_inv.images.push_back(phi.phi.images[i].embed(D2, 0));
  for (std::size_t j = 0; j < k; ++j) t_inv.images.push_back(var(N + j));
  for (std::size_t j = 0; j < k; ++j) t_inv.images.push_back(phi.phi.images[n + j].embed(D2, 0));
  return {SplitSubmersion::make(N, k, std::move(s), std::move(s_inv)),
          SplitSubmersion::make(N, k, std::move(t), std::move(t_inv))};
}

FibreTriple fibre_triple(const SplitSubmersion& phi) {
  const std::size_t n = phi.n, k = phi.k;
  return {SplitSubmersion::make(n + 2 * k, k, block_permutation(n, k, {1, 2, 0}), block_permutation(n, k, {2, 0, 1})),
          SplitSubmersion::projection(n + 2 * k, k),
          SplitSubmersion::make(n + 2 * k, k, block_permutation(n, k, {0, 2, 1}), block_permutation(n, k, {0, 2, 1}))};
}

AlgebroidPresentation restrict_to(const AlgebroidPresentation& A, const PolyMap& inclusion) {
  const std::size_t d = inclusion.source_dim;
  if (inclusion.target_dim() != d) {
    throw PreconditionError("overlap inclusion must be an invertible affine substitution (dimensions differ)");
  }
  const PolyMatrix J = inclusion.jacobian();
  RatMatrix L(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      if (!J.at(a, b).is_constant()) throw PreconditionError("overlap inclusion must be an affine substitution");
      L.at(a, b) = J.at(a, b).constant_term();
    }
  const auto inv = inverse(L);
  if (!inv) throw PreconditionError("overlap inclusion must be invertible");
  std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) rows[a][b] = inv->at(a, b);
  return etale_pullback(EtaleMap{inclusion, PolyMatrix::constant(rows, d)}, A);
}

Verdict verify_descent(const CoverDatum& D) {
  Verdict v;
  for (std::size_t c = 0; c < D.charts.size(); ++c) {
    D.charts[c].check_shapes();
    if (!D.charts[c].base.is_single_chart()) throw DimensionError("cover chart " + std::to_string(c) + " is not a single chart");
  }
  for (const auto& o : D.overlaps) {
    if (o.i >= D.charts.size() || o.j >= D.charts.size()) throw DimensionError("overlap " + idx(o.i, o.j) + " names a missing chart");
    if (o.to_i.source_dim != o.dim || o.to_j.source_dim != o.dim) throw DimensionError("overlap " + idx(o.i, o.j) + ": inclusion source mismatch");
    const AlgebroidPresentation Ai = restrict_to(D.charts[o.i], o.to_i);
    const AlgebroidPresentation Aj = restrict_to(D.charts[o.j], o.to_j);
    if (o.theta.rows() != Aj.rank || o.theta.cols() != Ai.rank || o.theta.nvars() != o.dim) {
      throw DimensionError("transition θ" + idx(o.i, o.j) + " has the wrong shape");
    }
    const std::string name = "θ" + idx(o.i, o.j);
    v.absorb(check_morphism(over_identity(Aj, Ai, o.theta)), name);
    if (!unit_inverse(o.theta)) {
      v.fail(name, "transition is not invertible", determinant(o.theta));
    } else {
      v.record(name + " is an isomorphism A_" + std::to_string(o.j) + " → A_" + std::to_string(o.i) + " on the overlap");
    }
  }
  const std::vector<CoverTriple> triples = D.triples.empty() ? derived_triples(D) : D.triples;
  for (const auto& T : triples) {
    if (T.i >= D.charts.size() || T.j >= D.charts.size() || T.k >= D.charts.size()) {
      throw DimensionError("triple " + idx(T.i, T.j, T.k) + " names a missing chart");
    }
    const PairData ij = pair_data(D, T.i, T.j, T.to_ij, T.dim);
    const PairData jk = pair_data(D, T.j, T.k, T.to_jk, T.dim);
    const PairData ik = pair_data(D, T.i, T.k, T.to_ik, T.dim);
    if (!(ij.into_a == ik.into_a) || !(ij.into_b == jk.into_a) || !(jk.into_b == ik.into_b)) {
      throw PreconditionError("triple " + idx(T.i, T.j, T.k) + ": fibre-product maps disagree on the charts");
    }
    Verdict t;
    compare(t, jk.theta * ij.theta, ik.theta, "triple " + idx(T.i, T.j, T.k),
            "cocycle failure: θ_ij θ_jk − θ_ik ≠ 0");
    if (t.valid) t.record("θ_ij θ_jk = θ_ik on U" + idx(T.i, T.j, T.k));
    v.absorb(t);
  }
  return v;
}

Verdict verify_descent(const SubmersionDatum& D) {
  const SplitSubmersion& phi = D.phi;
  const AlgebroidPresentation& A = D.algebroid;
  A.check_shapes();
  if (!A.base.is_single_chart() || A.base.dim() != phi.source_dim()) throw DimensionError("descent datum: algebroid does not live over the source of φ");
  const std::size_t m = phi.k + A.rank;
  if (D.psi.rows() != m || D.psi.cols() != m || D.psi.nvars() != phi.n + 2 * phi.k) {
    throw DimensionError("descent datum: ψ must be a " + std::to_string(m) + "×" + std::to_string(m) +
                         " matrix over Affine(" + std::to_string(phi.n + 2 * phi.k) + ")");
  }
  Verdict v;
  const FibreSquare F = fibre_square(phi);
  const Pullback sA = pullback_algebroid(F.s, A);
  const Pullback tA = pullback_algebroid(F.t, A);
  const AlgebroidMorphism psi = over_identity(sA.algebroid, tA.algebroid, D.psi);
  v.absorb(check_morphism(psi), "ψ");
  if (!unit_inverse(D.psi)) {
    v.fail("ψ", "ψ is not invertible", determinant(D.psi));
    return v;
  }
  v.record("ψ: s!A → t!A is an isomorphism");
  if (!v.valid) return v;

  const FibreTriple T = fibre_triple(phi);
  const CompositionIso c_s_pr2 = composition_iso(T.pr2, F.s, A);
  const CompositionIso c_t_pr2 = composition_iso(T.pr2, F.t, A);
  const CompositionIso c_s_pr1 = composition_iso(T.pr1, F.s, A);
  const CompositionIso c_t_pr1 = composition_iso(T.pr1, F.t, A);
  const CompositionIso c_s_m = composition_iso(T.m, F.s, A);
  const CompositionIso c_t_m = composition_iso(T.m, F.t, A);

  auto reframe = [&](const Pullback& from, const Pullback& to, const std::string& label) {
    if (!(from.f == to.f)) v.record("canonical reframe " + label);
    return canonical_reframe(from, to);
  };
  const AlgebroidMorphism lhs = chain({invert(c_s_pr2.iso), reframe(c_s_pr2.composite, c_s_m.composite, "(s∘pr₂)!A → (s∘m)!A"),
                                       c_s_m.iso, pullback_morphism(T.m, psi), invert(c_t_m.iso),
                                       reframe(c_t_m.composite, c_t_pr1.composite, "(t∘m)!A → (t∘pr₁)!A"), c_t_pr1.iso});
  const AlgebroidMorphism rhs = chain({pullback_morphism(T.pr2, psi), invert(c_t_pr2.iso),
                                       reframe(c_t_pr2.composite, c_s_pr1.composite, "(t∘pr₂)!A → (s∘pr₁)!A"),
                                       c_s_pr1.iso, pullback_morphism(T.pr1, psi)});
  Verdict c;
  compare(c, lhs.pieces[0].matrix, rhs.pieces[0].matrix, "cocycle",
          "m!ψ differs from pr₁!ψ ∘ pr₂!ψ (composition isomorphisms interleaved)");
  if (c.valid) {
    c.record("c_{t,pr₁} c_{t,m}⁻¹ ∘ m!ψ ∘ c_{s,m} c_{s,pr₂}⁻¹ = pr₁!ψ ∘ c_{s,pr₁} c_{t,pr₂}⁻¹ ∘ pr₂!ψ");
  }
  v.absorb(c);
  return v;
}

GluedAtlas glue_cover(const CoverDatum& D) {
  GluedAtlas out{D, {}, verify_descent(D)};
  if (!out.verdict.valid) throw PreconditionError("cover does not satisfy the cocycle condition");
  for (std::size_t o = 0; o < D.overlaps.size(); ++o) {
    const CoverOverlap& ov = D.overlaps[o];
    const std::size_t ri = D.charts[ov.i].rank, rj = D.charts[ov.j].rank;
    OverlapNormalizer nz{o, {}, {}};
    if (ov.i <= ov.j) {
      nz.psi_i = PolyMatrix::identity(ri, ov.dim);
      nz.psi_j = *unit_inverse(ov.theta);  // A_i frame → A_j frame
    } else {
      nz.psi_i = ov.theta;
      nz.psi_j = PolyMatrix::identity(rj, ov.dim);
    }
    Verdict check;
    compare(check, *unit_inverse(nz.psi_j) * nz.psi_i, ov.theta, "normalizer " + idx(ov.i, ov.j), "ψ_i ψ_j⁻¹ ≠ θ_ij");
    if (check.valid) check.record("ψ_i ψ_j⁻¹ = θ_ij on U" + idx(ov.i, ov.j));
    out.verdict.absorb(check);
    out.normalizers.push_back(std::move(nz));
  }
  return out;
}

SubmersionDatum canonical_descent_datum(const SplitSubmersion& phi, const AlgebroidPresentation& B) {
  const Pullback P = pullback_algebroid(phi, B);
  const FibreSquare F = fibre_square(phi);
  const CompositionIso c_s = composition_iso(F.s, phi, B);
  const CompositionIso c_t = composition_iso(F.t, phi, B);
  const AlgebroidMorphism psi = chain({invert(c_s.iso), canonical_reframe(c_s.composite, c_t.composite), c_t.iso});
  return SubmersionDatum{phi, P.algebroid, psi.pieces[0].matrix};
}

DescentResult descend_along_section(const SubmersionDatum& D, const PolyMap& section) {
  const SplitSubmersion& phi = D.phi;
  const std::size_t n = phi.n, k = phi.k, N = n + k, r = D.algebroid.rank;
  if (section.source_dim != n || section.target_dim() != N) throw DimensionError("section has the wrong shape");
  if (!phi.map().after(section).is_identity()) throw PreconditionError("s is not a section of φ");
  if (!verify_descent(D).valid) throw PreconditionError("descent datum fails verification");

  DescentResult out;
  out.descended = transverse_pullback(section, D.algebroid);
  const Pullback Pd = pullback_algebroid(phi, out.descended.algebroid);
  const FibreSquare F = fibre_square(phi);
  const Pullback sA = pullback_algebroid(F.s, D.algebroid);

  // δ(x) = (σφx, x) in the coordinates (y, u, u′) of X×_Y X.
  const PolyMap back = phi.phi.after(section).after(phi.map());
  PolyMap delta{N, {}};
  for (std::size_t i = 0; i < n; ++i) delta.images.push_back(phi.phi.images[i]);
  for (std::size_t j = 0; j < k; ++j) delta.images.push_back(back.images[n + j]);
  for (std::size_t j = 0; j < k; ++j) delta.images.push_back(phi.phi.images[n + j]);
  const PolyMatrix jdelta = delta.jacobian();
  const PolyMatrix psi_up = D.psi.pull(delta);

  std::vector<std::size_t> all_rows, xi_cols;
  for (std::size_t l = 0; l < out.descended.frame.rows(); ++l) all_rows.push_back(l);
  for (std::size_t p = 0; p < r; ++p) xi_cols.push_back(n + p);
  const PolyMatrix xi_frame = out.descended.frame.submatrix(all_rows, xi_cols).pull(phi.map());

  PolyMatrix sigma(Pd.algebroid.rank, r, N);
  for (std::size_t l = 0; l < Pd.algebroid.rank; ++l) {
    PolyMatrix vrow(1, N, N), eta(1, Pd.to_base.cols(), N);
    for (std::size_t mu = 0; mu < N; ++mu) vrow.at(0, mu) = Pd.algebroid.local().anchor.at(l, mu);
    for (std::size_t q = 0; q < Pd.to_base.cols(); ++q) eta.at(0, q) = Pd.to_base.at(l, q);
    const PolyMatrix xi = eta * xi_frame;
    const PolyMatrix pushed = vrow * jdelta.transpose();
    std::vector<Polynomial> v, x;
    for (std::size_t a = 0; a < pushed.cols(); ++a) v.push_back(pushed.at(0, a));
    for (std::size_t p = 0; p < r; ++p) x.push_back(xi.at(0, p));
    const Section z = pullback_coordinates(sA, delta, v, x);
    PolyMatrix zrow(1, z.size(), N);
    for (std::size_t a = 0; a < z.size(); ++a) zrow.at(0, a) = z[a];
    const PolyMatrix image = zrow * psi_up;
    for (std::size_t p = 0; p < r; ++p) sigma.at(l, p) = image.at(0, k + p);
  }
  out.sigma = over_identity(Pd.algebroid, D.algebroid, sigma);

  out.verdict.absorb(check_morphism(out.sigma), "Σ");
  if (!unit_inverse(sigma)) {
    out.verdict.fail("Σ", "Σ is not invertible", determinant(sigma));
    return out;
  }
  out.verdict.record("Σ: φ!s!A → A is an isomorphism");
  const SubmersionDatum can = canonical_descent_datum(phi, out.descended.algebroid);
  const AlgebroidMorphism sS = pullback_morphism(F.s, out.sigma);
  const AlgebroidMorphism tS = pullback_morphism(F.t, out.sigma);
  Verdict sq;
  compare(sq, can.psi * tS.pieces[0].matrix, sS.pieces[0].matrix * D.psi, "descent square",
          "ψ ∘ s!Σ differs from t!Σ ∘ ψ_can");
  if (sq.valid) sq.record("ψ ∘ s!Σ = t!Σ ∘ ψ_can");
  out.verdict.absorb(sq);
  return out;
}

AlgebroidMorphism section_roundtrip(const Pullback& P, const TransversePullback& T) {
  if (!(T.base == P.algebroid)) throw PreconditionError("round trip: transverse pullback is not taken from this pullback");
  const std::size_t n = T.g.source_dim;
  std::vector<std::size_t> rows, cols;
  for (std::size_t l = 0; l < T.frame.rows(); ++l) rows.push_back(l);
  for (std::size_t q = 0; q < P.algebroid.rank; ++q) cols.push_back(n + q);
  const PolyMatrix m = T.frame.submatrix(rows, cols) * P.to_base.pull(T.g);
  return over_identity(T.algebroid, P.base, m);
}

}  // namespace algebroidkit
