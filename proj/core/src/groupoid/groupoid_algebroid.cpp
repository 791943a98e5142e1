#include "algebroidkit/groupoid/groupoid_algebroid.hpp"

#include "algebroidkit/error.hpp"
#include "algebroidkit/pullback/pullback.hpp"

namespace algebroidkit {

namespace {

std::string pair_label(std::size_t g, std::size_t h) { return "(" + arrow_label(g) + "," + arrow_label(h) + ")"; }

std::string entry(std::size_t a, std::size_t b) { return " entry (" + std::to_string(a) + "," + std::to_string(b) + ")"; }

void check_shapes(const GroupoidAlgebroid& GA) {
  const AlgebroidPresentation& A = GA.algebroid;
  A.check_shapes();
  if (!A.base.is_single_chart() || A.base.dim() != GA.groupoid.dim) {
    throw DimensionError("groupoid algebroid: A must live over the object chart of dimension " + std::to_string(GA.groupoid.dim));
  }
  if (GA.psi.size() != GA.groupoid.order()) throw DimensionError("groupoid algebroid: one ψ per arrow is required");
  for (const auto& m : GA.psi)
    if (m.rows() != A.rank || m.cols() != A.rank || m.nvars() != GA.groupoid.dim) {
      throw DimensionError("groupoid algebroid: ψ has the wrong shape");
    }
}

void compare(Verdict& v, const PolyMatrix& lhs, const PolyMatrix& rhs, const std::string& where, const std::string& what) {
  for (std::size_t a = 0; a < lhs.rows(); ++a)
    for (std::size_t b = 0; b < lhs.cols(); ++b) {
      const Polynomial d = lhs.at(a, b) - rhs.at(a, b);
      if (!d.is_zero()) v.fail(where + entry(a, b), what, d);
    }
}

void compare(Verdict& v, const std::vector<Polynomial>& lhs, const std::vector<Polynomial>& rhs, const std::string& where,
             const std::string& what, const std::string& component) {
  for (std::size_t a = 0; a < lhs.size(); ++a) {
    const Polynomial d = lhs[a] - rhs[a];
    if (!d.is_zero()) v.fail(where + " " + component + std::to_string(a), what, d);
  }
}

// (g·σ)(x′) = σ(g⁻¹x′)·ψ_g(g⁻¹x′).
Section push(const GroupoidAlgebroid& GA, const Section& sigma, std::size_t g, std::size_t ginv) {
  const PolyMap& back = GA.groupoid.action[ginv];
  const std::size_t r = GA.algebroid.rank, n = GA.groupoid.dim;
  Section out(r, Polynomial(n));
  for (std::size_t p = 0; p < r; ++p) {
    if (sigma[p].is_zero()) continue;
    const Polynomial s = back.pull(sigma[p]);
    for (std::size_t q = 0; q < r; ++q)
      if (!GA.psi[g].at(p, q).is_zero()) out[q] += s * back.pull(GA.psi[g].at(p, q));
  }
  return out;
}

PolyMatrix row_vector(const std::vector<Polynomial>& v, std::size_t nvars) {
  PolyMatrix m(1, v.size(), nvars);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(0, i) = v[i];
  return m;
}

}  // namespace

AlgebroidPresentation translate(const AlgebroidPresentation& A, const DeskGroupoid& G, std::size_t g) {
  const std::size_t gi = G.inverse(g);
  return etale_pullback(EtaleMap{G.action[g], G.jacobian(gi).pull(G.action[g])}, A);
}

AlgebroidMorphism arrow_morphism(const GroupoidAlgebroid& GA, std::size_t g) {
  const AlgebroidPresentation& A = GA.algebroid;
  return AlgebroidMorphism{A, translate(A, GA.groupoid, g),
                           {MorphismPiece{0, 0, PolyMap::identity(GA.groupoid.dim), GA.psi.at(g), std::nullopt}}};
}

Verdict verify_groupoid_algebroid(const GroupoidAlgebroid& GA) {
  check_shapes(GA);
  Verdict v;
  const Verdict gv = verify_groupoid(GA.groupoid);
  v.absorb(gv, "groupoid");
  if (!gv.valid) return v;
  const DeskGroupoid& G = GA.groupoid;
  for (std::size_t g = 0; g < G.order(); ++g) {
    const std::string name = "ψ_" + arrow_label(g);
    v.absorb(check_morphism(arrow_morphism(GA, g)), name);
    if (!unit_inverse(GA.psi[g])) v.fail(name, "ψ is not invertible", determinant(GA.psi[g]));
  }
  if (v.valid) v.record("each ψ_g is an algebroid isomorphism s*A → t*A");
  Verdict c;
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      compare(c, GA.psi[G.multiply(g, h)], GA.psi[h] * GA.psi[g].pull(G.action[h]), "cocycle " + pair_label(g, h),
              "ψ_gh(x) differs from ψ_h(x)·ψ_g(h·x)");
    }
  if (c.valid) c.record("cocycle ψ_gh(x) = ψ_h(x)·ψ_g(h·x)");
  v.absorb(c);
  const Verdict sheaf = verify_groupoid_sheaf(GA);
  if (sheaf.valid == v.valid) {
    v.record("sheaf formulation gives the same verdict");
  } else {
    v.fail("formulations", "cocycle and sheaf formulations disagree", Polynomial::constant(G.dim, 1));
  }
  return v;
}

Verdict verify_groupoid_sheaf(const GroupoidAlgebroid& GA) {
  check_shapes(GA);
  Verdict v;
  const Verdict gv = verify_groupoid(GA.groupoid);
  v.absorb(gv, "groupoid");
  if (!gv.valid) return v;
  const DeskGroupoid& G = GA.groupoid;
  const LocalStructure& L = GA.algebroid.local();
  const std::size_t r = GA.algebroid.rank, n = G.dim;
  std::vector<std::size_t> inv(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) inv[g] = G.inverse(g);

  for (std::size_t p = 0; p < r; ++p) {
    compare(v, push(GA, L.frame_section(p), 0, 0), L.frame_section(p), "unit on " + frame_name(p),
            "the unit arrow moves a section", "component ");
  }
  for (std::size_t g = 0; g < G.order(); ++g) {
    const std::string at = " at " + arrow_label(g);
    const PolyMatrix J = G.jacobian(g);
    std::vector<Section> pushed;
    for (std::size_t p = 0; p < r; ++p) pushed.push_back(push(GA, L.frame_section(p), g, inv[g]));
    for (std::size_t p = 0; p < r; ++p) {
      std::vector<Polynomial> moved(n, Polynomial(n));
      for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
          if (!J.at(mu, nu).is_zero()) moved[mu] += J.at(mu, nu) * G.action[inv[g]].pull(L.anchor.at(p, nu));
      compare(v, L.anchor_of(pushed[p]), moved, "anchor equivariance on " + frame_name(p) + at,
              "a(g·e) differs from g_*a(e) in", "coordinate x");
    }
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = p + 1; q < r; ++q) {
        compare(v, L.bracket_of(pushed[p], pushed[q]), push(GA, L.bracket.bracket_of_frames(p, q), g, inv[g]),
                "bracket (" + frame_name(p) + "," + frame_name(q) + ")" + at, "g·[e,e′] differs from [g·e, g·e′] in",
                "component ");
      }
    for (std::size_t h = 0; h < G.order(); ++h)
      for (std::size_t p = 0; p < r; ++p) {
        compare(v, push(GA, push(GA, L.frame_section(p), h, inv[h]), g, inv[g]),
                push(GA, L.frame_section(p), G.multiply(g, h), inv[G.multiply(g, h)]),
                "action law on " + frame_name(p) + " " + pair_label(g, h), "g·(h·e) differs from (gh)·e in", "component ");
      }
  }
  if (v.valid) v.record("G acts on sections by bracket-preserving maps with equivariant anchor");
  return v;
}

TangentAction action_from_cocycle(const GroupoidAlgebroid& GA) {
  if (!verify_groupoid_algebroid(GA).valid) throw PreconditionError("tangent action: groupoid algebroid fails verification");
  const std::size_t n = GA.groupoid.dim, r = GA.algebroid.rank;
  TangentAction T{GA, {}};
  for (const auto& psi : GA.psi) {
    PolyMatrix m(n + r, r, n);
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q) m.at(n + p, q) = psi.at(p, q);
    T.maps.push_back(std::move(m));
  }
  return T;
}

Verdict verify_action_law(const TangentAction& T) {
  const GroupoidAlgebroid& GA = T.source;
  const DeskGroupoid& G = GA.groupoid;
  const LocalStructure& L = GA.algebroid.local();
  const std::size_t n = G.dim, r = GA.algebroid.rank;
  Verdict v;
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      const PolyMatrix Jh = G.jacobian(h);
      const PolyMatrix anchor_at_hx = L.anchor.pull(G.action[h]);
      for (std::size_t p = 0; p < r; ++p) {
        std::vector<Polynomial> wxi;
        for (std::size_t mu = 0; mu < n; ++mu) wxi.push_back(L.anchor.at(p, mu));
        for (std::size_t q = 0; q < r; ++q) wxi.push_back(Polynomial::constant(n, q == p ? 1 : 0));
        const PolyMatrix pair = row_vector(wxi, n);
        const PolyMatrix eta = pair * T.maps[h];
        PolyMatrix w(n, 1, n);
        for (std::size_t mu = 0; mu < n; ++mu) w.at(mu, 0) = wxi[mu];
        const PolyMatrix vcol = Jh * w;
        const PolyMatrix a_eta = eta * anchor_at_hx;
        const std::string where = "action law on " + frame_name(p) + " " + pair_label(g, h);
        compare(v, vcol.transpose(), a_eta, where, "intermediate pair violates v = a(ξ)");
        std::vector<Polynomial> veta;
        for (std::size_t mu = 0; mu < n; ++mu) veta.push_back(vcol.at(mu, 0));
        for (std::size_t q = 0; q < r; ++q) veta.push_back(eta.at(0, q));
        compare(v, row_vector(veta, n) * T.maps[g].pull(G.action[h]), pair * T.maps[G.multiply(g, h)], where,
                "ψ̃(v, ψ̃(w, ξ)) differs from ψ̃(m_*(v,w), ξ)");
      }
    }
  if (v.valid) v.record("ψ̃(m_*(v,w), ξ) = ψ̃(v, ψ̃(w, ξ))");
  return v;
}

std::vector<PolyMatrix> cocycle_from_action(const TangentAction& T) {
  const LocalStructure& L = T.source.algebroid.local();
  const std::size_t n = T.source.groupoid.dim, r = T.source.algebroid.rank;
  const PolyMatrix pairs = hconcat(L.anchor, PolyMatrix::identity(r, n));
  std::vector<PolyMatrix> out;
  for (const auto& m : T.maps) out.push_back(pairs * m);
  return out;
}

Verdict check_equivariant(const EquivariantMorphism& m) {
  const GroupoidAlgebroid& S = m.source;
  const GroupoidAlgebroid& T = m.target;
  if (!(S.groupoid == T.groupoid)) throw DimensionError("equivariant morphism: different groupoids");
  if (m.rho.rows() != S.algebroid.rank || m.rho.cols() != T.algebroid.rank) throw DimensionError("equivariant morphism: ρ has the wrong shape");
  Verdict v;
  v.absorb(check_morphism(AlgebroidMorphism{S.algebroid, T.algebroid,
                                            {MorphismPiece{0, 0, PolyMap::identity(S.groupoid.dim), m.rho, std::nullopt}}}),
           "ρ");
  for (std::size_t g = 0; g < S.groupoid.order(); ++g) {
    compare(v, m.rho * T.psi[g], S.psi[g] * m.rho.pull(S.groupoid.action[g]), "equivariance at " + arrow_label(g),
            "ρ(x)ψ′_g(x) differs from ψ_g(x)ρ(g·x)");
  }
  if (v.valid) v.record("ρ is an equivariant algebroid morphism");
  return v;
}

}  // namespace algebroidkit
