#include "algebroidkit/groupoid/la_groupoid.hpp"

#include <functional>

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/error.hpp"
#include "algebroidkit/pullback/pullback.hpp"

namespace algebroidkit {

namespace {

AlgebroidPresentation copies(const ChartBase& base, const LocalStructure& local) {
  AlgebroidPresentation out;
  out.base = base;
  out.rank = local.rank();
  out.pieces.assign(base.component_count(), local);
  return out;
}

// Ω → Ω₂ sending ω to the pair whose second factor is second(ω) and whose first factor lies on the
// arrow first(g) for ω on the arrow g.
AlgebroidMorphism pairing(const LAGroupoid& L, const std::function<std::size_t(std::size_t)>& first,
                          const AlgebroidMorphism& second) {
  AlgebroidMorphism out{L.omega, L.omega2, {}};
  for (const auto& p : second.pieces) {
    out.pieces.push_back({p.source_component, L.groupoid.pair_index(first(p.source_component), p.target_component),
                          p.base_map, p.matrix, std::nullopt});
  }
  return out;
}

AlgebroidMorphism tangent_map(const AlgebroidMorphism& F) {
  AlgebroidMorphism out{tangent_algebroid(F.source.base), tangent_algebroid(F.target.base), {}};
  for (const auto& p : F.pieces) {
    out.pieces.push_back({p.source_component, p.target_component, p.base_map, p.base_map.jacobian().transpose(), std::nullopt});
  }
  return out;
}

void same(Verdict& v, const AlgebroidMorphism& a, const AlgebroidMorphism& b, const std::string& identity) {
  if (a.pieces.size() != b.pieces.size()) {
    v.fail(identity, "composites have different numbers of pieces", Polynomial());
    return;
  }
  bool ok = true;
  for (std::size_t k = 0; k < a.pieces.size(); ++k) {
    const MorphismPiece& p = a.pieces[k];
    const MorphismPiece& q = b.pieces[k];
    const std::string where = identity + " on component " + std::to_string(p.source_component);
    const std::size_t nv = p.matrix.nvars();
    if (p.target_component != q.target_component) {
      ok = false;
      v.fail(where, "lands in component " + std::to_string(p.target_component) + " versus " + std::to_string(q.target_component),
             Polynomial::constant(nv, 1));
      continue;
    }
    for (std::size_t mu = 0; mu < p.base_map.images.size(); ++mu) {
      const Polynomial d = p.base_map.images[mu] - q.base_map.images[mu];
      if (!d.is_zero()) {
        ok = false;
        v.fail(where, "base maps differ in coordinate x" + std::to_string(mu), d);
      }
    }
    for (std::size_t i = 0; i < p.matrix.rows(); ++i)
      for (std::size_t j = 0; j < p.matrix.cols(); ++j) {
        const Polynomial d = p.matrix.at(i, j) - q.matrix.at(i, j);
        if (!d.is_zero()) {
          ok = false;
          v.fail(where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")", "frame matrices differ", d);
        }
      }
  }
  if (ok) v.record(identity);
}

void expect_base(Verdict& v, const AlgebroidMorphism& F, const std::string& name,
                 const std::function<std::pair<std::size_t, PolyMap>(std::size_t)>& expected) {
  bool ok = true;
  for (const auto& p : F.pieces) {
    const auto [comp, map] = expected(p.source_component);
    if (p.target_component != comp || !(p.base_map == map)) {
      ok = false;
      v.fail(name + " on component " + std::to_string(p.source_component),
             "does not cover the corresponding groupoid structure map", Polynomial::constant(map.source_dim, 1));
    }
  }
  if (ok) v.record(name + " covers the groupoid structure map");
}

}  // namespace

LAGroupoid build_la_groupoid(const GroupoidAlgebroid& GA) {
  if (!verify_groupoid_algebroid(GA).valid) throw PreconditionError("LA-groupoid: groupoid algebroid fails verification");
  const DeskGroupoid& G = GA.groupoid;
  const std::size_t N = G.order(), n = G.dim, r = GA.algebroid.rank;
  const LocalStructure& local = GA.algebroid.local();
  const PolyMap id = PolyMap::identity(n);
  const PolyMatrix I = PolyMatrix::identity(r, n);

  LAGroupoid L;
  L.groupoid = G;
  L.base = GA.algebroid;
  L.omega = copies(G.arrow_space(), local);
  L.omega2 = copies(G.pair_space(), local);
  L.s = {L.omega, L.base, {}};
  L.t = {L.omega, L.base, {}};
  L.i = {L.omega, L.omega, {}};
  for (std::size_t g = 0; g < N; ++g) {
    L.s.pieces.push_back({g, 0, id, I, std::nullopt});
    L.t.pieces.push_back({g, 0, G.action[g], GA.psi[g], std::nullopt});
    L.i.pieces.push_back({g, G.inverse(g), G.action[g], GA.psi[g], std::nullopt});
  }
  L.u = {L.base, L.omega, {{0, 0, id, I, std::nullopt}}};
  L.m = {L.omega2, L.omega, {}};
  L.pr1 = {L.omega2, L.omega, {}};
  L.pr2 = {L.omega2, L.omega, {}};
  for (std::size_t g = 0; g < N; ++g)
    for (std::size_t h = 0; h < N; ++h) {
      const std::size_t c = G.pair_index(g, h);
      L.m.pieces.push_back({c, G.multiply(g, h), id, I, std::nullopt});
      L.pr1.pieces.push_back({c, g, G.action[h], GA.psi[h], std::nullopt});
      L.pr2.pieces.push_back({c, h, id, I, std::nullopt});
    }
  return L;
}

Verdict verify_la_groupoid(const LAGroupoid& L) {
  const DeskGroupoid& G = L.groupoid;
  Verdict v;
  const Verdict gv = verify_groupoid(G);
  v.absorb(gv, "groupoid");
  if (!gv.valid) return v;
  if (!(L.omega.base == G.arrow_space()) || !(L.omega2.base == G.pair_space()) || !(L.base.base == G.object_space())) {
    throw DimensionError("LA-groupoid: algebroids do not live over the arrow, pair and object spaces");
  }
  const std::vector<std::pair<const char*, const AlgebroidMorphism*>> maps = {
      {"s̃", &L.s}, {"t̃", &L.t}, {"ũ", &L.u}, {"ĩ", &L.i}, {"m̃", &L.m}, {"pr̃₁", &L.pr1}, {"pr̃₂", &L.pr2}};
  for (const auto& [name, F] : maps) v.absorb(check_morphism(*F), name);
  if (!v.valid) return v;

  const std::size_t n = G.dim;
  const PolyMap id = PolyMap::identity(n);
  expect_base(v, L.s, "s̃", [&](std::size_t) { return std::pair{std::size_t{0}, id}; });
  expect_base(v, L.t, "t̃", [&](std::size_t g) { return std::pair{std::size_t{0}, G.action[g]}; });
  expect_base(v, L.u, "ũ", [&](std::size_t) { return std::pair{std::size_t{0}, id}; });
  expect_base(v, L.i, "ĩ", [&](std::size_t g) { return std::pair{G.inverse(g), G.action[g]}; });
  expect_base(v, L.m, "m̃", [&](std::size_t c) { return std::pair{G.multiply(c / G.order(), c % G.order()), id}; });
  expect_base(v, L.pr1, "pr̃₁", [&](std::size_t c) { return std::pair{c / G.order(), G.action[c % G.order()]}; });
  expect_base(v, L.pr2, "pr̃₂", [&](std::size_t c) { return std::pair{c % G.order(), id}; });
  if (!v.valid) return v;

  const AlgebroidMorphism idA = identity_morphism(L.base), idO = identity_morphism(L.omega);
  same(v, compose(L.s, L.u), idA, "s̃∘ũ = id");
  same(v, compose(L.t, L.u), idA, "t̃∘ũ = id");
  same(v, compose(L.s, L.i), L.t, "s̃∘ĩ = t̃");
  same(v, compose(L.t, L.i), L.s, "t̃∘ĩ = s̃");
  same(v, compose(L.s, L.pr1), compose(L.t, L.pr2), "s̃∘pr̃₁ = t̃∘pr̃₂");
  same(v, compose(L.s, L.m), compose(L.s, L.pr2), "s̃∘m̃ = s̃∘pr̃₂");
  same(v, compose(L.t, L.m), compose(L.t, L.pr1), "t̃∘m̃ = t̃∘pr̃₁");

  const AlgebroidMorphism us = compose(L.u, L.s), ut = compose(L.u, L.t);
  const AlgebroidMorphism left_unit = pairing(L, [](std::size_t) { return std::size_t{0}; }, idO);
  const AlgebroidMorphism right_unit = pairing(L, [](std::size_t g) { return g; }, us);
  const AlgebroidMorphism left_inv = pairing(L, [&](std::size_t g) { return G.inverse(g); }, idO);
  const AlgebroidMorphism right_inv = pairing(L, [](std::size_t g) { return g; }, L.i);
  same(v, compose(L.pr1, left_unit), ut, "pr̃₁(ũt̃ω, ω) = ũt̃ω");
  same(v, compose(L.m, left_unit), idO, "m̃(ũt̃ω, ω) = ω");
  same(v, compose(L.pr1, right_unit), idO, "pr̃₁(ω, ũs̃ω) = ω");
  same(v, compose(L.m, right_unit), idO, "m̃(ω, ũs̃ω) = ω");
  same(v, compose(L.pr1, left_inv), L.i, "pr̃₁(ĩω, ω) = ĩω");
  same(v, compose(L.m, left_inv), us, "m̃(ĩω, ω) = ũs̃ω");
  same(v, compose(L.pr1, right_inv), idO, "pr̃₁(ω, ĩω) = ω");
  same(v, compose(L.m, right_inv), ut, "m̃(ω, ĩω) = ũt̃ω");

  // Associativity on Ω ×_A Ω ×_A Ω, framed by the third factor.
  bool assoc = true;
  const auto piece_of = [&](std::size_t c) -> const MorphismPiece& { return L.m.pieces.at(c); };
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      for (std::size_t k = 0; k < G.order(); ++k) {
        const MorphismPiece& a = piece_of(G.pair_index(G.multiply(g, h), k));
        const MorphismPiece& b1 = piece_of(G.pair_index(h, k));
        const MorphismPiece& b2 = piece_of(G.pair_index(g, b1.target_component));
        const PolyMatrix rhs = b1.matrix * b2.matrix.pull(b1.base_map);
        const std::string where = "associativity (" + arrow_label(g) + "," + arrow_label(h) + "," + arrow_label(k) + ")";
        if (a.target_component != b2.target_component) {
          assoc = false;
          v.fail(where, "m̃(m̃×id) and m̃(id×m̃) land in different components", Polynomial::constant(n, 1));
          continue;
        }
        for (std::size_t i = 0; i < rhs.rows(); ++i)
          for (std::size_t j = 0; j < rhs.cols(); ++j) {
            const Polynomial d = a.matrix.at(i, j) - rhs.at(i, j);
            if (!d.is_zero()) {
              assoc = false;
              v.fail(where, "m̃(m̃×id) differs from m̃(id×m̃)", d);
            }
          }
      }
  if (assoc) v.record("m̃∘(m̃×id) = m̃∘(id×m̃)");

  bool anchors = true;
  for (const auto& [name, F] : maps) {
    Verdict a;
    same(a, compose(anchor_morphism(F->target), *F), compose(tangent_map(*F), anchor_morphism(F->source)),
         std::string("anchor∘") + name + " = T(base)∘anchor");
    anchors = anchors && a.valid;
    v.absorb(a);
  }
  if (anchors) v.record("anchors form a morphism into the tangent groupoid");
  return v;
}

std::vector<PolyMatrix> bang_comparison(const LAGroupoid& L) {
  const std::size_t n = L.groupoid.dim;
  const Pullback P = pullback_algebroid(SplitSubmersion::projection(n, 0), L.base);
  const PolyMap id = PolyMap::identity(n);
  std::vector<PolyMatrix> out;
  for (const auto& piece : L.s.pieces) {
    const LocalStructure& W = L.omega.local(piece.source_component);
    PolyMatrix c(W.rank(), L.base.rank, n);
    for (std::size_t l = 0; l < W.rank(); ++l) {
      std::vector<Polynomial> v, xi;
      for (std::size_t mu = 0; mu < n; ++mu) v.push_back(W.anchor.at(l, mu));
      for (std::size_t p = 0; p < L.base.rank; ++p) xi.push_back(piece.matrix.at(l, p));
      const Section z = pullback_coordinates(P, id, v, xi);
      for (std::size_t p = 0; p < L.base.rank; ++p) c.at(l, p) = z[p];
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

Verdict invertible_per_component(const std::vector<PolyMatrix>& mats, const std::string& name, std::size_t r, std::size_t n) {
  Verdict v;
  for (std::size_t g = 0; g < mats.size(); ++g) {
    const std::string where = name + " on " + arrow_label(g);
    if (mats[g].rows() != r) {
      v.fail(where, "dimension mismatch: rank Ω = " + std::to_string(mats[g].rows()) + ", rank of the target = " + std::to_string(r),
             Polynomial::constant(n, Rational(static_cast<long>(mats[g].rows())) - Rational(static_cast<long>(r))));
    } else if (!unit_inverse(mats[g])) {
      v.fail(where, "comparison map is not invertible", determinant(mats[g]));
    }
  }
  if (v.valid) v.record(name + " is an isomorphism on every arrow component");
  return v;
}

}  // namespace

Verdict check_bang_vacant(const LAGroupoid& L) {
  std::vector<PolyMatrix> c;
  try {
    c = bang_comparison(L);
  } catch (const PreconditionError& e) {
    Verdict v;
    v.fail("(ã,s̃)", std::string("anchor of Ω does not lie over a∘s̃: ") + e.what(), Polynomial::constant(L.groupoid.dim, 1));
    return v;
  }
  return invertible_per_component(c, "(ã,s̃): Ω → s!A", L.base.rank, L.groupoid.dim);
}

Verdict check_vacant(const LAGroupoid& L) {
  std::vector<PolyMatrix> c;
  for (const auto& p : L.s.pieces) c.push_back(p.matrix);
  return invertible_per_component(c, "(π̃,s̃): Ω → s*A", L.base.rank, L.groupoid.dim);
}

GroupoidAlgebroid f2_recover(const LAGroupoid& L) {
  if (!check_bang_vacant(L).valid) throw PreconditionError("LA-groupoid is not !-vacant");
  const std::vector<PolyMatrix> c = bang_comparison(L);
  GroupoidAlgebroid GA{L.groupoid, L.base, {}};
  for (std::size_t g = 0; g < c.size(); ++g) GA.psi.push_back(*unit_inverse(c[g]) * L.t.pieces[g].matrix);
  return GA;
}

Verdict check_la_morphism(const LAMorphism& M) {
  const LAGroupoid& S = M.source;
  const LAGroupoid& T = M.target;
  if (!(S.groupoid == T.groupoid)) throw DimensionError("LA-groupoid morphism: different groupoids");
  Verdict v;
  v.absorb(check_morphism(M.omega_map), "Φ");
  v.absorb(check_morphism(M.base_map), "ρ");
  if (!v.valid) return v;
  AlgebroidMorphism pairs{S.omega2, T.omega2, {}};
  for (std::size_t g = 0; g < S.groupoid.order(); ++g)
    for (std::size_t h = 0; h < S.groupoid.order(); ++h) {
      const MorphismPiece& p = M.omega_map.pieces.at(h);
      pairs.pieces.push_back({S.groupoid.pair_index(g, h), S.groupoid.pair_index(g, h), p.base_map, p.matrix, std::nullopt});
    }
  same(v, compose(T.s, M.omega_map), compose(M.base_map, S.s), "s̃′∘Φ = ρ∘s̃");
  same(v, compose(T.t, M.omega_map), compose(M.base_map, S.t), "t̃′∘Φ = ρ∘t̃");
  same(v, compose(M.omega_map, S.u), compose(T.u, M.base_map), "Φ∘ũ = ũ′∘ρ");
  same(v, compose(T.i, M.omega_map), compose(M.omega_map, S.i), "ĩ′∘Φ = Φ∘ĩ");
  same(v, compose(T.m, pairs), compose(M.omega_map, S.m), "m̃′∘(Φ×Φ) = Φ∘m̃");
  return v;
}

LAMorphism f1_morphism(const EquivariantMorphism& rho) {
  LAMorphism M{build_la_groupoid(rho.source), build_la_groupoid(rho.target), {}, {}};
  const std::size_t n = rho.source.groupoid.dim;
  M.omega_map = {M.source.omega, M.target.omega, {}};
  for (std::size_t g = 0; g < rho.source.groupoid.order(); ++g)
    M.omega_map.pieces.push_back({g, g, PolyMap::identity(n), rho.rho, std::nullopt});
  M.base_map = {M.source.base, M.target.base, {{0, 0, PolyMap::identity(n), rho.rho, std::nullopt}}};
  return M;
}

EquivariantMorphism f2_morphism(const LAMorphism& m) {
  return EquivariantMorphism{f2_recover(m.source), f2_recover(m.target), m.base_map.pieces.at(0).matrix};
}

LAMorphism unit_iso(const LAGroupoid& L) {
  LAMorphism M{L, build_la_groupoid(f2_recover(L)), {}, identity_morphism(L.base)};
  const std::vector<PolyMatrix> c = bang_comparison(L);
  M.omega_map = {L.omega, M.target.omega, {}};
  for (std::size_t g = 0; g < c.size(); ++g)
    M.omega_map.pieces.push_back({g, g, PolyMap::identity(L.groupoid.dim), c[g], std::nullopt});
  return M;
}

}  // namespace algebroidkit
