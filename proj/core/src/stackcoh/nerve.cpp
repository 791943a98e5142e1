#include "algebroidkit/stackcoh/nerve.hpp"

#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

std::size_t index_of(const std::vector<std::size_t>& string, std::size_t order) {
  std::size_t c = 0;
  for (std::size_t g : string) c = c * order + g;
  return c;
}

std::string simplex_label(const std::vector<std::size_t>& string) {
  std::string s;
  for (std::size_t g : string) s += (s.empty() ? "" : "|") + arrow_label(g);
  return s;
}

}  // namespace

ChartBase NerveData::level(std::size_t n) const {
  if (n == 0) return groupoid.object_space();
  std::vector<ChartComponent> c;
  for (const auto& s : simplices.at(n)) c.push_back({simplex_label(s), groupoid.dim});
  return ChartBase::disjoint_union(std::move(c));
}

NerveData build_nerve(const DeskGroupoid& G, std::size_t N) {
  if (!verify_groupoid(G).valid) throw PreconditionError("nerve: the groupoid fails verification");
  const std::size_t order = G.order();
  NerveData out;
  out.groupoid = G;
  out.N = N;
  out.simplices.push_back({{}});
  for (std::size_t n = 1; n <= N; ++n) {
    std::vector<std::vector<std::size_t>> level;
    for (const auto& s : out.simplices[n - 1])
      for (std::size_t g = 0; g < order; ++g) {
        auto t = s;
        t.push_back(g);
        level.push_back(std::move(t));
      }
    out.simplices.push_back(std::move(level));
  }
  out.faces.resize(N + 1);
  const PolyMap id = PolyMap::identity(G.dim);
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      FaceMap f;
      for (const auto& s : out.simplices[n]) {
        std::vector<std::size_t> t;
        std::size_t arrow = 0;
        if (i == 0) {
          t.assign(s.begin() + 1, s.end());
          arrow = G.inverse(s[0]);
        } else if (i == n) {
          t.assign(s.begin(), s.end() - 1);
        } else {
          t.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i - 1));
          t.push_back(G.multiply(s[i - 1], s[i]));
          t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 1), s.end());
        }
        f.component.push_back(index_of(t, order));
        f.base_map.push_back(i == 0 ? G.action[arrow] : id);
        f.arrow.push_back(arrow);
      }
      out.faces[n].push_back(std::move(f));
    }
  }
  return out;
}

Verdict verify_nerve(const NerveData& nerve) {
  Verdict v;
  const DeskGroupoid& G = nerve.groupoid;
  const std::size_t order = G.order();
  for (std::size_t n = 0; n <= nerve.N; ++n) {
    std::size_t expect = 1;
    for (std::size_t p = 0; p < n; ++p) expect *= order;
    if (nerve.component_count(n) != expect)
      v.fail("X_" + std::to_string(n), "level has the wrong number of components",
             Polynomial::constant(G.dim, Rational(static_cast<long>(nerve.component_count(n)) - static_cast<long>(expect))));
  }
  for (std::size_t n = 2; n <= nerve.N; ++n) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const FaceMap& dj = nerve.faces[n][j];
        const FaceMap& di = nerve.faces[n - 1][i];
        const FaceMap& dj1 = nerve.faces[n][i];
        const FaceMap& di1 = nerve.faces[n - 1][j - 1];
        bool ok = true;
        for (std::size_t c = 0; c < nerve.component_count(n) && ok; ++c) {
          const std::size_t left = di.component[dj.component[c]];
          const std::size_t right = di1.component[dj1.component[c]];
          const PolyMap lmap = di.base_map[dj.component[c]].after(dj.base_map[c]);
          const PolyMap rmap = di1.base_map[dj1.component[c]].after(dj1.base_map[c]);
          const std::size_t larrow = G.multiply(di.arrow[dj.component[c]], dj.arrow[c]);
          const std::size_t rarrow = G.multiply(di1.arrow[dj1.component[c]], dj1.arrow[c]);
          if (left != right) {
            v.fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " on X_" + std::to_string(n),
                   "simplicial identity fails on components",
                   Polynomial::constant(G.dim, Rational(static_cast<long>(left) - static_cast<long>(right))));
            ok = false;
          } else if (larrow != rarrow) {
            v.fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " on X_" + std::to_string(n),
                   "simplicial identity fails on transport arrows",
                   Polynomial::constant(G.dim, Rational(static_cast<long>(larrow) - static_cast<long>(rarrow))));
            ok = false;
          } else if (!(lmap == rmap)) {
            std::size_t mu = 0;
            while (lmap.images[mu] == rmap.images[mu]) ++mu;
            v.fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " on X_" + std::to_string(n),
                   "simplicial identity fails on substitutions", lmap.images[mu] - rmap.images[mu]);
            ok = false;
          }
        }
        if (ok) v.record("d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                         std::to_string(i) + " on X_" + std::to_string(n));
      }
    }
  }
  return v;
}

}  // namespace algebroidkit
