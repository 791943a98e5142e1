#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "algebroidkit/algebroid/chart.hpp"
#include "algebroidkit/exactalg/poly_matrix.hpp"
#include "algebroidkit/verdict.hpp"

namespace algebroidkit {

/// Finite group G acting on Affine(dim) (or on the point when dim = 0) by affine automorphisms.
/// The arrow (g, x) goes from x to g·x and (g, h·x)·(h, x) = (gh, x). Element 0 is the unit.
struct DeskGroupoid {
  std::size_t dim = 0;
  /// table[g][h] = gh.
  std::vector<std::vector<std::size_t>> table;
  /// action[g]: x ↦ g·x.
  std::vector<PolyMap> action;

  /// Finite group over the point.
  static DeskGroupoid finite_group(std::vector<std::vector<std::size_t>> table);
  /// ℤ/n over the point.
  static DeskGroupoid cyclic(std::size_t order);
  static DeskGroupoid transformation(std::vector<std::vector<std::size_t>> table, std::vector<PolyMap> action);
  /// Multiplication table read off from composition of the given substitutions; the first one must
  /// be the identity. Throws PreconditionError when the set is not closed.
  static DeskGroupoid from_actions(std::vector<PolyMap> action);

  std::size_t order() const { return table.size(); }
  std::size_t multiply(std::size_t g, std::size_t h) const { return table.at(g).at(h); }
  /// Throws PreconditionError when g has no two-sided inverse in the table.
  std::size_t inverse(std::size_t g) const;
  /// Arrow space ⊔_g X, components labeled "g0", "g1", ….
  ChartBase arrow_space() const;
  /// Composable pairs ⊔_{(g,h)} X, component g·order + h, coordinate x of the arrow (h, x).
  ChartBase pair_space() const;
  ChartBase object_space() const;
  std::size_t pair_index(std::size_t g, std::size_t h) const { return g * order() + h; }
  /// Jacobian of the action of g (constant).
  PolyMatrix jacobian(std::size_t g) const;

  friend bool operator==(const DeskGroupoid&, const DeskGroupoid&) = default;
};

std::string arrow_label(std::size_t g);

/// Group axioms on the table, and action axioms (unit acts trivially, (gh)·x = g·(h·x), each
/// substitution affine and invertible). Throws DimensionError on malformed shapes only.
Verdict verify_groupoid(const DeskGroupoid& G);

}  // namespace algebroidkit
