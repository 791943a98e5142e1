#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/groupoid/desk_groupoid.hpp"

namespace algebroidkit {

/// Face map X_n → X_{n−1} of the nerve, one entry per component of X_n.
/// The coordinate of a simplex is its final target, so only d_0 moves the coordinate; there the
/// coefficient is transported along `arrow` (the inverse of the dropped first arrow).
struct FaceMap {
  std::vector<std::size_t> component;
  std::vector<PolyMap> base_map;
  std::vector<std::size_t> arrow;  // 0 (the unit) when the coefficient is not transported
};

/// Levels X_0..X_N of the nerve of a desk groupoid. A simplex of X_n is a string (g_1,…,g_n)
/// with y_n →g_n→ … →g_1→ y_0 together with the coordinate y_0; the component index reads the
/// string as a base-|G| numeral with g_1 most significant.
struct NerveData {
  DeskGroupoid groupoid;
  std::size_t N = 0;
  std::vector<std::vector<std::vector<std::size_t>>> simplices;  // simplices[n][c]
  std::vector<std::vector<FaceMap>> faces;                       // faces[n][i] for 1 ≤ n ≤ N, 0 ≤ i ≤ n

  ChartBase level(std::size_t n) const;
  std::size_t component_count(std::size_t n) const { return simplices.at(n).size(); }
};

/// Nerve up to level N. Throws PreconditionError when the groupoid fails verification.
NerveData build_nerve(const DeskGroupoid& G, std::size_t N);

/// Level sizes |G|^n and the simplicial identities d_i d_j = d_{j−1} d_i (i < j) on components,
/// transport arrows and substitutions.
Verdict verify_nerve(const NerveData& nerve);

}  // namespace algebroidkit
