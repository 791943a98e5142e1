#pragma once

#include <vector>

#include "algebroidkit/algebroid/presentation.hpp"

namespace algebroidkit {

/// TX over Affine(n): anchor = identity, zero brackets.
AlgebroidPresentation tangent_algebroid(std::size_t n);
/// Tangent algebroid of every component of a base.
AlgebroidPresentation tangent_algebroid(const ChartBase& base);
/// Lie algebra over Point; c[i][j][k] are the structure constants (only i < j is read).
AlgebroidPresentation lie_algebra(const std::vector<std::vector<std::vector<Rational>>>& c);
/// Abelian Lie algebra of dimension n over Point.
AlgebroidPresentation abelian_lie_algebra(std::size_t n);

/// g × TU with frame (∂_1..∂_n, e_1..e_r): anchor projects to TU and brackets are
/// [(ξ,v),(ξ′,v′)] = ([ξ,ξ′] + v(ξ′) − v′(ξ), [v,v′]). Throws PreconditionError when g is not over Point.
AlgebroidPresentation trivial_transitive(const AlgebroidPresentation& g, const ChartBase& base);

/// Rank-1 algebroid on the trivial line bundle with anchor v: [f,g] = f v(g) − g v(f).
AlgebroidPresentation rank1_from_anchor(const std::vector<Polynomial>& v);

}  // namespace algebroidkit
