#include "algebroidkit/algebroid/representation.hpp"

namespace algebroidkit {

RepresentationPresentation RepresentationPresentation::trivial(const AlgebroidPresentation& A, std::size_t fiber_rank) {
  RepresentationPresentation R{A, fiber_rank, {}};
  for (std::size_t c = 0; c < A.pieces.size(); ++c) {
    R.gamma.emplace_back(A.rank, PolyMatrix(fiber_rank, fiber_rank, A.base.dim(c)));
  }
  return R;
}

namespace {

void check_shapes(const RepresentationPresentation& R) {
  R.algebroid.check_shapes();
  if (R.gamma.size() != R.algebroid.pieces.size()) throw DimensionError("connection needs one entry per base component");
  for (std::size_t c = 0; c < R.gamma.size(); ++c) {
    if (R.gamma[c].size() != R.algebroid.rank) throw DimensionError("connection needs one matrix per frame element");
    for (const auto& g : R.gamma[c]) {
      if (g.rows() != R.fiber_rank || g.cols() != R.fiber_rank || g.nvars() != R.algebroid.base.dim(c)) {
        throw DimensionError("fiber rank mismatch in connection matrix");
      }
    }
  }
}

}  // namespace

Verdict verify_representation(const RepresentationPresentation& R) {
  check_shapes(R);
  Verdict v;
  const std::size_t r = R.algebroid.rank, m = R.fiber_rank;
  if (r < 2) return v;
  for (std::size_t c = 0; c < R.gamma.size(); ++c) {
    const LocalStructure& A = R.algebroid.pieces[c];
    const std::size_t n = A.dim();
    const std::string prefix = R.gamma.size() > 1 ? "component " + R.algebroid.base.components()[c].label + ": " : "";
    const auto pairs = increasing_tuples(r, 2);
    for (std::size_t alpha = 0; alpha < m; ++alpha) {
      AlgebroidForm eps = AlgebroidForm::zero(r, n, 0, m);
      eps.components[alpha] = Polynomial::constant(n, Rational(1));
      const AlgebroidForm curv = de_rham_d(A, R.gamma[c], de_rham_d(A, R.gamma[c], eps));
      bool ok = true;
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        for (std::size_t beta = 0; beta < m; ++beta) {
          const Polynomial& x = curv.components[t * m + beta];
          if (x.is_zero()) continue;
          ok = false;
          v.fail(prefix + "curvature on (" + frame_name(pairs[t][0]) + "," + frame_name(pairs[t][1]) + ")",
                 "ε" + std::to_string(beta) + "-component of d∘d(ε" + std::to_string(alpha) + ")", x);
        }
      }
      if (ok) v.record(prefix + "d∘d(ε" + std::to_string(alpha) + ") = 0");
    }
  }
  return v;
}

RepresentationResult rep_verify_and_d(const RepresentationPresentation& R, const AlgebroidForm& omega,
                                      std::size_t component) {
  check_shapes(R);
  if (omega.fiber_rank != R.fiber_rank) throw DimensionError("form fiber rank does not match the representation");
  RepresentationResult out{verify_representation(R), {}};
  out.image = de_rham_d(R.algebroid.pieces.at(component), R.gamma.at(component), omega);
  return out;
}

}  // namespace algebroidkit
