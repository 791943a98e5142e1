#include "algebroidkit/algebroid/morphism.hpp"

#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

Section pull_section(const PolyMap& f, const Section& s) {
  Section out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(f.pull(x));
  return out;
}

void check_piece_shapes(const AlgebroidMorphism& m, const MorphismPiece& p) {
  if (p.source_component >= m.source.pieces.size() || p.target_component >= m.target.pieces.size()) {
    throw DimensionError("morphism piece refers to a missing component");
  }
  const LocalStructure& A = m.source.pieces[p.source_component];
  const LocalStructure& B = m.target.pieces[p.target_component];
  if (p.base_map.source_dim != A.dim() || p.base_map.target_dim() != B.dim()) {
    throw DimensionError("base map does not go from the source chart to the target chart");
  }
  for (const auto& im : p.base_map.images) {
    if (im.nvars() != A.dim()) throw DimensionError("base map image lives on the wrong chart");
  }
  if (p.matrix.rows() != A.rank() || p.matrix.cols() != B.rank() || p.matrix.nvars() != A.dim()) {
    throw DimensionError("bundle map must be rank(source) x rank(target) over the source chart");
  }
  if (p.decomposition) {
    if (p.decomposition->size() != A.rank()) throw DimensionError("decomposition needs one entry per source frame element");
    for (const auto& terms : *p.decomposition) {
      for (const auto& t : terms) {
        if (t.g.nvars() != A.dim() || t.xi.size() != B.rank()) throw DimensionError("decomposition term has the wrong shape");
        for (const auto& x : t.xi)
          if (x.nvars() != B.dim()) throw DimensionError("decomposition section lives on the wrong chart");
      }
    }
  }
}

Decomposition canonical_decomposition(const PolyMatrix& M, std::size_t target_dim) {
  Decomposition d(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t p = 0; p < M.cols(); ++p) {
      if (M.at(i, p).is_zero()) continue;
      Section e(M.cols(), Polynomial(target_dim));
      e[p] = Polynomial::constant(target_dim, Rational(1));
      d[i].push_back({M.at(i, p), std::move(e)});
    }
  }
  return d;
}

Verdict check_piece(const AlgebroidMorphism& m, const MorphismPiece& piece) {
  Verdict v;
  const LocalStructure& A = m.source.pieces[piece.source_component];
  const LocalStructure& B = m.target.pieces[piece.target_component];
  const PolyMap& f = piece.base_map;
  const PolyMatrix& M = piece.matrix;
  const std::size_t r = A.rank(), rt = B.rank(), n = A.dim();

  const Decomposition D = piece.decomposition ? *piece.decomposition : canonical_decomposition(M, B.dim());
  if (piece.decomposition) {
    const PolyMatrix DM = decomposition_matrix(D, f, rt);
    bool ok = true;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t p = 0; p < rt; ++p)
        if (!(DM.at(i, p) == M.at(i, p))) {
          ok = false;
          v.fail("decomposition of φ(" + frame_name(i) + ")", "decomposition disagrees with the frame matrix at " + frame_name(p),
                 DM.at(i, p) - M.at(i, p));
        }
    if (ok) v.record("decomposition matches the frame matrix");
  }

  // Anchor square: a(e_i)(f_ν) = Σ_p M(i,p) f*(b_p^ν).
  const PolyMatrix pulled_anchor = B.anchor.pull(f);
  bool anchor_ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t nu = 0; nu < B.dim(); ++nu) {
      Polynomial res = A.anchor_apply(i, f.images[nu]);
      for (std::size_t p = 0; p < rt; ++p)
        if (!M.at(i, p).is_zero()) res -= M.at(i, p) * pulled_anchor.at(p, nu);
      if (!res.is_zero()) {
        anchor_ok = false;
        v.fail("anchor on " + frame_name(i), "f_*a(" + frame_name(i) + ") − b(φ(" + frame_name(i) + ")) in direction " +
                   coordinate_name(nu), res);
      }
    }
  }
  if (anchor_ok) v.record("anchor square b∘φ = f_*∘a");

  // Bracket identity on every pair of frame elements.
  bool bracket_ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      Section lhs(rt, Polynomial(n));
      for (std::size_t k = 0; k < r; ++k) {
        const Polynomial c = A.bracket(i, j, k);
        if (c.is_zero()) continue;
        for (std::size_t p = 0; p < rt; ++p) lhs[p] += c * M.at(k, p);
      }
      Section rhs(rt, Polynomial(n));
      for (const auto& a : D[i]) {
        for (const auto& b : D[j]) {
          const Section br = pull_section(f, B.bracket_of(a.xi, b.xi));
          const Polynomial gh = a.g * b.g;
          for (std::size_t p = 0; p < rt; ++p)
            if (!br[p].is_zero()) rhs[p] += gh * br[p];
        }
      }
      for (const auto& b : D[j]) {
        const Polynomial eh = A.anchor_apply(i, b.g);
        if (eh.is_zero()) continue;
        const Section nu = pull_section(f, b.xi);
        for (std::size_t p = 0; p < rt; ++p) rhs[p] += eh * nu[p];
      }
      for (const auto& a : D[i]) {
        const Polynomial eg = A.anchor_apply(j, a.g);
        if (eg.is_zero()) continue;
        const Section xi = pull_section(f, a.xi);
        for (std::size_t p = 0; p < rt; ++p) rhs[p] -= eg * xi[p];
      }
      for (std::size_t p = 0; p < rt; ++p) {
        Polynomial res = lhs[p] - rhs[p];
        if (!res.is_zero()) {
          bracket_ok = false;
          v.fail("bracket on (" + frame_name(i) + "," + frame_name(j) + ")",
                 "φ[" + frame_name(i) + "," + frame_name(j) + "] − (bracket of images), target frame " + frame_name(p), res);
        }
      }
    }
  }
  if (bracket_ok) v.record("bracket compatibility on all frame pairs");
  return v;
}

}  // namespace

PolyMatrix decomposition_matrix(const Decomposition& d, const PolyMap& base_map, std::size_t target_rank) {
  const std::size_t n = base_map.source_dim;
  PolyMatrix M(d.size(), target_rank, n);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (const auto& t : d[i])
      for (std::size_t p = 0; p < target_rank; ++p)
        if (!t.xi.at(p).is_zero()) M.at(i, p) += t.g * base_map.pull(t.xi[p]);
  return M;
}

Verdict check_morphism(const AlgebroidMorphism& m) {
  m.source.check_shapes();
  m.target.check_shapes();
  std::vector<int> covered(m.source.pieces.size(), 0);
  for (const auto& p : m.pieces) {
    check_piece_shapes(m, p);
    ++covered[p.source_component];
  }
  for (std::size_t c = 0; c < covered.size(); ++c) {
    if (covered[c] != 1) throw DimensionError("every source component needs exactly one morphism piece");
  }
  Verdict v;
  const bool multi = m.pieces.size() > 1;
  for (const auto& p : m.pieces) {
    const std::string prefix = multi ? "component " + m.source.base.components()[p.source_component].label : "";
    v.absorb(check_piece(m, p), prefix);
  }
  return v;
}

AlgebroidMorphism identity_morphism(const AlgebroidPresentation& A) {
  AlgebroidMorphism m{A, A, {}};
  for (std::size_t c = 0; c < A.pieces.size(); ++c) {
    const std::size_t n = A.base.dim(c);
    m.pieces.push_back({c, c, PolyMap::identity(n), PolyMatrix::identity(A.rank, n), std::nullopt});
  }
  return m;
}

AlgebroidMorphism anchor_morphism(const AlgebroidPresentation& A) {
  AlgebroidMorphism m{A, tangent_algebroid(A.base), {}};
  for (std::size_t c = 0; c < A.pieces.size(); ++c) {
    m.pieces.push_back({c, c, PolyMap::identity(A.base.dim(c)), A.pieces[c].anchor, std::nullopt});
  }
  return m;
}

AlgebroidMorphism compose(const AlgebroidMorphism& second, const AlgebroidMorphism& first) {
  if (!(first.target == second.source)) throw DimensionError("morphisms are not composable");
  AlgebroidMorphism out{first.source, second.target, {}};
  for (const auto& p1 : first.pieces) {
    const MorphismPiece* p2 = nullptr;
    for (const auto& q : second.pieces)
      if (q.source_component == p1.target_component) p2 = &q;
    if (!p2) throw DimensionError("second morphism misses a component");
    out.pieces.push_back({p1.source_component, p2->target_component, p2->base_map.after(p1.base_map),
                          p1.matrix * p2->matrix.pull(p1.base_map), std::nullopt});
  }
  return out;
}

bool same_map(const AlgebroidMorphism& a, const AlgebroidMorphism& b) {
  if (a.pieces.size() != b.pieces.size()) return false;
  for (const auto& p : a.pieces) {
    bool found = false;
    for (const auto& q : b.pieces) {
      if (q.source_component != p.source_component) continue;
      found = q.target_component == p.target_component && q.base_map == p.base_map && q.matrix == p.matrix;
    }
    if (!found) return false;
  }
  return true;
}

LocalStructure change_frame(const LocalStructure& A, const PolyMatrix& P) {
  const std::size_t r = A.rank(), n = A.dim();
  if (P.rows() != r || P.cols() != r || P.nvars() != n) throw DimensionError("frame change has the wrong shape");
  auto Pinv = unit_inverse(P);
  if (!Pinv) throw PreconditionError("frame change is not invertible over the polynomial ring");
  LocalStructure out(r, n);
  out.anchor = P * A.anchor;
  std::vector<Section> rows(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t p = 0; p < r; ++p) rows[i].push_back(P.at(i, p));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const Section w = A.bracket_of(rows[i], rows[j]);
      for (std::size_t k = 0; k < r; ++k) {
        Polynomial c(n);
        for (std::size_t p = 0; p < r; ++p)
          if (!w[p].is_zero()) c += w[p] * Pinv->at(p, k);
        out.bracket.set(i, j, k, std::move(c));
      }
    }
  }
  return out;
}

AlgebroidMorphism invert(const AlgebroidMorphism& m, const std::vector<PolyMap>& base_inverses) {
  if (base_inverses.size() != m.pieces.size()) throw DimensionError("one base inverse per piece is required");
  AlgebroidMorphism out{m.target, m.source, {}};
  for (std::size_t k = 0; k < m.pieces.size(); ++k) {
    const auto& p = m.pieces[k];
    const PolyMap& g = base_inverses[k];
    if (!p.base_map.after(g).is_identity() || !g.after(p.base_map).is_identity()) {
      throw PreconditionError("supplied base inverse is not a two-sided inverse");
    }
    auto Minv = unit_inverse(p.matrix);
    if (!Minv) throw PreconditionError("bundle map is not invertible over the polynomial ring");
    out.pieces.push_back({p.target_component, p.source_component, g, Minv->pull(g), std::nullopt});
  }
  return out;
}

AlgebroidMorphism invert(const AlgebroidMorphism& m) {
  std::vector<PolyMap> ids;
  for (const auto& p : m.pieces) ids.push_back(PolyMap::identity(p.base_map.source_dim));
  return invert(m, ids);
}

}  // namespace algebroidkit
