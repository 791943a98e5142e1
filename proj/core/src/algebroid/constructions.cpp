#include "algebroidkit/algebroid/constructions.hpp"

#include "algebroidkit/error.hpp"

namespace algebroidkit {

AlgebroidPresentation tangent_algebroid(std::size_t n) {
  LocalStructure L(n, n);
  L.anchor = PolyMatrix::identity(n, n);
  return AlgebroidPresentation::single(std::move(L));
}

AlgebroidPresentation tangent_algebroid(const ChartBase& base) {
  AlgebroidPresentation A;
  A.base = base;
  std::size_t rank = base.dim(0);
  for (const auto& c : base.components()) {
    if (c.dim != rank) throw DimensionError("tangent algebroid needs equal-dimensional components");
    LocalStructure L(c.dim, c.dim);
    L.anchor = PolyMatrix::identity(c.dim, c.dim);
    A.pieces.push_back(std::move(L));
  }
  A.rank = rank;
  return A;
}

AlgebroidPresentation lie_algebra(const std::vector<std::vector<std::vector<Rational>>>& c) {
  const std::size_t r = c.size();
  LocalStructure L(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) L.bracket.set(i, j, k, Polynomial::constant(0, c.at(i).at(j).at(k)));
  return AlgebroidPresentation::single(std::move(L));
}

AlgebroidPresentation abelian_lie_algebra(std::size_t n) { return AlgebroidPresentation::single(LocalStructure(n, 0)); }

AlgebroidPresentation trivial_transitive(const AlgebroidPresentation& g, const ChartBase& base) {
  if (g.base.kind() != ChartBase::Kind::Point) throw PreconditionError("isotropy algebra must live over Point");
  const std::size_t r = g.rank;
  AlgebroidPresentation out;
  out.base = base;
  out.rank = r + base.dim(0);
  for (const auto& comp : base.components()) {
    const std::size_t n = comp.dim;
    if (n + r != out.rank) throw DimensionError("trivial transitive algebroid needs equal-dimensional components");
    LocalStructure L(n + r, n);
    for (std::size_t mu = 0; mu < n; ++mu) L.anchor.at(mu, mu) = Polynomial::constant(n, Rational(1));
    // Constant sections of g are killed by every v, so only [ξ,ξ′] survives on the frame.
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
          const Polynomial c = g.local().bracket(i, j, k);
          if (!c.is_zero()) L.bracket.set(n + i, n + j, n + k, Polynomial::constant(n, c.constant_term()));
        }
    out.pieces.push_back(std::move(L));
  }
  return out;
}

AlgebroidPresentation rank1_from_anchor(const std::vector<Polynomial>& v) {
  const std::size_t n = v.size();
  LocalStructure L(1, n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    if (v[mu].nvars() != n) throw DimensionError("vector field component lives on the wrong chart");
    L.anchor.at(0, mu) = v[mu];
  }
  // [e,e] = 0 is forced; the Leibniz rule then yields [f e, g e] = (f v(g) − g v(f)) e.
  return AlgebroidPresentation::single(std::move(L));
}

}  // namespace algebroidkit
