#include "algebroidkit/groupoid/representation.hpp"

#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

bool is_group_representation(const DeskGroupoid& G, const std::vector<PolyMatrix>& psi_e) {
  std::vector<PolyMatrix> rho;
  for (const auto& m : psi_e) rho.push_back(m.transpose());
  if (!rho[0].is_identity()) return false;
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!(rho[g] * rho[h] == rho[G.multiply(g, h)])) return false;
  return true;
}

}  // namespace

GroupoidRepVerdict verify_groupoid_rep(const GroupoidRepresentation& R) {
  const GroupoidAlgebroid& GA = R.parent;
  const DeskGroupoid& G = GA.groupoid;
  const std::size_t n = G.dim, r = GA.algebroid.rank, m = R.rep.fiber_rank;
  if (!(R.rep.algebroid == GA.algebroid)) throw DimensionError("groupoid representation: connection is on a different algebroid");
  if (R.psi_e.size() != G.order()) throw DimensionError("groupoid representation: one ψ^E per arrow is required");
  for (const auto& M : R.psi_e)
    if (M.rows() != m || M.cols() != m || M.nvars() != n) throw DimensionError("groupoid representation: ψ^E has the wrong shape");
  if (!verify_groupoid_algebroid(GA).valid) throw PreconditionError("groupoid representation: parent fails verification");

  GroupoidRepVerdict out;
  Verdict& v = out.verdict;
  v.absorb(verify_representation(R.rep), "∇");
  for (std::size_t g = 0; g < G.order(); ++g)
    if (!unit_inverse(R.psi_e[g])) v.fail("ψ^E_" + arrow_label(g), "fibre map is not invertible", determinant(R.psi_e[g]));
  bool cocycle = true;
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      const PolyMatrix rhs = R.psi_e[h] * R.psi_e[g].pull(G.action[h]);
      const PolyMatrix& lhs = R.psi_e[G.multiply(g, h)];
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const Polynomial d = lhs.at(a, b) - rhs.at(a, b);
          if (!d.is_zero()) {
            cocycle = false;
            v.fail("ψ^E cocycle (" + arrow_label(g) + "," + arrow_label(h) + ") entry (" + std::to_string(a) + "," +
                       std::to_string(b) + ")",
                   "ψ^E_gh(x) differs from ψ^E_h(x)·ψ^E_g(h·x)", d);
          }
        }
    }
  if (cocycle) v.record("vector-bundle cocycle ψ^E_gh(x) = ψ^E_h(x)·ψ^E_g(h·x)");

  const LocalStructure& L = GA.algebroid.local();
  const Connection& gamma = R.rep.gamma.at(0);
  bool square = true;
  for (std::size_t g = 0; g < G.order(); ++g) {
    const PolyMap& back = G.action[G.inverse(g)];
    for (std::size_t p = 0; p < r; ++p) {
      Section f(r, Polynomial(n));
      for (std::size_t q = 0; q < r; ++q) f[q] = back.pull(GA.psi[g].at(p, q));
      const PolyMatrix lhs_x = gamma[p] * R.psi_e[g];
      for (std::size_t alpha = 0; alpha < m; ++alpha) {
        std::vector<Polynomial> h(m, Polynomial(n));
        for (std::size_t b = 0; b < m; ++b) h[b] = back.pull(R.psi_e[g].at(alpha, b));
        std::vector<Polynomial> rhs(m, Polynomial(n));
        for (std::size_t q = 0; q < r; ++q) {
          if (f[q].is_zero()) continue;
          for (std::size_t b = 0; b < m; ++b) {
            rhs[b] += f[q] * L.anchor_apply(q, h[b]);
            if (h[b].is_zero()) continue;
            for (std::size_t c = 0; c < m; ++c)
              if (!gamma[q].at(b, c).is_zero()) rhs[c] += f[q] * h[b] * gamma[q].at(b, c);
          }
        }
        for (std::size_t c = 0; c < m; ++c) {
          const Polynomial d = back.pull(lhs_x.at(alpha, c)) - rhs[c];
          if (!d.is_zero()) {
            square = false;
            v.fail("∇-compatibility at " + arrow_label(g) + " on (" + frame_name(p) + ", ε" + std::to_string(alpha) + ")",
                   "ψ^E(∇_ξ σ) differs from ∇_{ψξ}(ψ^E σ) in component ε" + std::to_string(c), d);
          }
        }
      }
    }
  }
  if (square) v.record("ψ^E intertwines ∇ along ψ");
  if (r == 0 && n == 0) out.group_representation = is_group_representation(G, R.psi_e);
  return out;
}

}  // namespace algebroidkit
