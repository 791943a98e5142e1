#include "algebroidkit/groupoid/desk_groupoid.hpp"

#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + arrow_label(a) + "," + arrow_label(b) + "," + arrow_label(c) + ")";
}

Polynomial flag(std::size_t nvars) { return Polynomial::constant(nvars, 1); }

}  // namespace

std::string arrow_label(std::size_t g) { return "g" + std::to_string(g); }

DeskGroupoid DeskGroupoid::finite_group(std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  return DeskGroupoid{0, std::move(table), std::vector<PolyMap>(n, PolyMap::identity(0))};
}

DeskGroupoid DeskGroupoid::cyclic(std::size_t order) {
  if (order == 0) throw DimensionError("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) t[a][b] = (a + b) % order;
  return finite_group(std::move(t));
}

DeskGroupoid DeskGroupoid::transformation(std::vector<std::vector<std::size_t>> table, std::vector<PolyMap> action) {
  if (action.empty()) throw DimensionError("transformation groupoid needs at least one element");
  const std::size_t dim = action[0].source_dim;
  return DeskGroupoid{dim, std::move(table), std::move(action)};
}

DeskGroupoid DeskGroupoid::from_actions(std::vector<PolyMap> action) {
  if (action.empty() || !action[0].is_identity()) throw PreconditionError("the first substitution must be the identity");
  const std::size_t n = action.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const PolyMap ab = action[a].after(action[b]);
      std::size_t found = n;
      for (std::size_t c = 0; c < n && found == n; ++c)
        if (action[c] == ab) found = c;
      if (found == n) throw PreconditionError("substitutions are not closed under composition");
      t[a][b] = found;
    }
  return transformation(std::move(t), std::move(action));
}

std::size_t DeskGroupoid::inverse(std::size_t g) const {
  for (std::size_t h = 0; h < order(); ++h)
    if (table[g][h] == 0 && table[h][g] == 0) return h;
  throw PreconditionError("element " + arrow_label(g) + " has no inverse");
}

ChartBase DeskGroupoid::arrow_space() const {
  std::vector<ChartComponent> c;
  for (std::size_t g = 0; g < order(); ++g) c.push_back({arrow_label(g), dim});
  return ChartBase::disjoint_union(std::move(c));
}

ChartBase DeskGroupoid::pair_space() const {
  std::vector<ChartComponent> c;
  for (std::size_t g = 0; g < order(); ++g)
    for (std::size_t h = 0; h < order(); ++h) c.push_back({arrow_label(g) + "|" + arrow_label(h), dim});
  return ChartBase::disjoint_union(std::move(c));
}

ChartBase DeskGroupoid::object_space() const { return dim == 0 ? ChartBase::point() : ChartBase::affine(dim); }

PolyMatrix DeskGroupoid::jacobian(std::size_t g) const { return action.at(g).jacobian(); }

Verdict verify_groupoid(const DeskGroupoid& G) {
  const std::size_t n = G.order();
  if (n == 0) throw DimensionError("empty group table");
  if (G.action.size() != n) throw DimensionError("one action substitution per group element is required");
  for (const auto& row : G.table) {
    if (row.size() != n) throw DimensionError("group table is not square");
    for (std::size_t v : row)
      if (v >= n) throw DimensionError("group table entry out of range");
  }
  for (const auto& a : G.action)
    if (a.source_dim != G.dim || a.target_dim() != G.dim) throw DimensionError("action substitution has the wrong dimension");

  Verdict v;
  const std::size_t d = G.dim;
  bool assoc = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t l = G.table[G.table[a][b]][c], r = G.table[a][G.table[b][c]];
        if (l != r) {
          assoc = false;
          v.fail("associativity " + triple(a, b, c),
                 "(gh)k = " + arrow_label(l) + " but g(hk) = " + arrow_label(r), flag(d));
        }
      }
  if (assoc) v.record("associativity of the multiplication table");
  bool unit = true;
  for (std::size_t a = 0; a < n; ++a)
    if (G.table[0][a] != a || G.table[a][0] != a) {
      unit = false;
      v.fail("unit " + arrow_label(a), arrow_label(0) + " is not a two-sided unit", flag(d));
    }
  if (unit) v.record(arrow_label(0) + " is the unit");
  bool inv = true;
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = G.table[a][b] == 0 && G.table[b][a] == 0;
    if (!found) {
      inv = false;
      v.fail("inverse " + arrow_label(a), "no two-sided inverse", flag(d));
    }
  }
  if (inv) v.record("every element has an inverse");

  bool affine = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& im : G.action[a].images)
      if (im.total_degree() > 1) {
        affine = false;
        v.fail("action " + arrow_label(a), "substitution is not affine", im);
      }
    if (d > 0 && !determinant(G.jacobian(a)).is_unit()) {
      affine = false;
      v.fail("action " + arrow_label(a), "substitution is not invertible", determinant(G.jacobian(a)));
    }
  }
  if (affine) v.record("each action substitution is an affine automorphism");
  bool act = G.action[0].is_identity();
  if (!act) v.fail("action " + arrow_label(0), "unit does not act trivially", flag(d));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const PolyMap lhs = G.action[G.table[a][b]], rhs = G.action[a].after(G.action[b]);
      for (std::size_t mu = 0; mu < d; ++mu) {
        const Polynomial diff = lhs.images[mu] - rhs.images[mu];
        if (!diff.is_zero()) {
          act = false;
          v.fail("action (" + arrow_label(a) + "," + arrow_label(b) + ")",
                 "(gh)·x differs from g·(h·x) in coordinate x" + std::to_string(mu), diff);
        }
      }
    }
  if (act) v.record("(gh)·x = g·(h·x), hence s, t, m, u, i satisfy the groupoid axioms");
  return v;
}

}  // namespace algebroidkit
