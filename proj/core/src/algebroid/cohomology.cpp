#include "algebroidkit/algebroid/cohomology.hpp"

#include <functional>
#include <map>

namespace algebroidkit {

Grading Grading::preset(const std::string& name, std::size_t dim, std::size_t rank) {
  if (name == "polynomial") return {name, std::vector<int>(dim, 1), std::vector<int>(rank, 0)};
  if (name == "total") return {name, std::vector<int>(dim, 1), std::vector<int>(rank, 1)};
  throw PreconditionError("unknown grading '" + name + "' (expected 'polynomial' or 'total')");
}

int Grading::grade_of(const Exponent& e, const IndexTuple& frames) const {
  int g = 0;
  for (std::size_t mu = 0; mu < e.size(); ++mu) g += coordinate_weights.at(mu) * static_cast<int>(e[mu]);
  for (std::size_t j : frames) g += frame_weights.at(j);
  return g;
}

namespace {

void check_grading(const Grading& g, std::size_t dim, std::size_t rank) {
  if (g.coordinate_weights.size() != dim || g.frame_weights.size() != rank) {
    throw DimensionError("grading '" + g.name + "' has the wrong number of weights");
  }
  for (int w : g.coordinate_weights)
    if (w <= 0) throw PreconditionError("coordinate weights must be positive for finite-dimensional pieces");
  for (int w : g.frame_weights)
    if (w < 0) throw PreconditionError("frame weights must be non-negative");
}

void exponents_of_weight(const std::vector<int>& w, int target, std::vector<Exponent>& out) {
  Exponent e(w.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t mu, int left) {
    if (mu == w.size()) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int k = 0; k * w[mu] <= left; ++k) {
      e[mu] = static_cast<unsigned>(k);
      rec(mu + 1, left - k * w[mu]);
    }
    e[mu] = 0;
  };
  rec(0, target);
}

std::string describe_monomial(const Exponent& e, const IndexTuple& J) {
  std::string s = Polynomial::monomial(e, Rational(1)).str();
  for (std::size_t j : J) s += "*" + coframe_name(j);
  return s;
}

}  // namespace

std::vector<GradedBasisElement> graded_basis(std::size_t dim, std::size_t rank, std::size_t degree,
                                             const Grading& grading, int grade) {
  check_grading(grading, dim, rank);
  std::vector<GradedBasisElement> out;
  for (const auto& J : increasing_tuples(rank, degree)) {
    int left = grade;
    for (std::size_t j : J) left -= grading.frame_weights[j];
    if (left < 0) continue;
    std::vector<Exponent> exps;
    exponents_of_weight(grading.coordinate_weights, left, exps);
    for (auto& e : exps) out.push_back({J, std::move(e)});
  }
  return out;
}

GradedComplex de_rham_complex(const LocalStructure& A, const Grading& grading, int cap) {
  const std::size_t r = A.rank(), n = A.dim();
  check_grading(grading, n, r);
  GradedComplex out;
  for (int g = 0; g <= cap; ++g) {
    std::vector<std::vector<GradedBasisElement>> bases;
    for (std::size_t k = 0; k <= r; ++k) bases.push_back(graded_basis(n, r, k, grading, g));
    CochainComplex cc;
    for (const auto& b : bases) cc.dims.push_back(b.size());
    for (std::size_t k = 0; k < r; ++k) {
      std::map<std::pair<IndexTuple, Exponent>, std::size_t> index;
      for (std::size_t t = 0; t < bases[k + 1].size(); ++t) index[{bases[k + 1][t].frames, bases[k + 1][t].exponent}] = t;
      RatMatrix d(bases[k + 1].size(), bases[k].size());
      const auto out_tuples = increasing_tuples(r, k + 1);
      for (std::size_t col = 0; col < bases[k].size(); ++col) {
        const auto& src = bases[k][col];
        AlgebroidForm w = AlgebroidForm::zero(r, n, k);
        w.at(src.frames) = Polynomial::monomial(src.exponent, Rational(1));
        const AlgebroidForm dw = de_rham_d(A, w);
        for (std::size_t t = 0; t < out_tuples.size(); ++t) {
          for (const auto& [e, c] : dw.components[t].terms()) {
            auto it = index.find({out_tuples[t], e});
            if (it == index.end()) {
              throw GradingError("d_A maps " + describe_monomial(src.exponent, src.frames) + " (grade " +
                                     std::to_string(g) + ") to " + describe_monomial(e, out_tuples[t]) + " (grade " +
                                     std::to_string(grading.grade_of(e, out_tuples[t])) + ") under grading '" +
                                     grading.name + "'",
                                 Polynomial::monomial(src.exponent, Rational(1)), Polynomial::monomial(e, c));
            }
            d.at(it->second, col) = c;
          }
        }
      }
      cc.differentials.push_back(std::move(d));
    }
    out.grades[g] = std::move(cc);
  }
  return out;
}

RatMatrix graded_pullback(const PolyMatrix& M, const PolyMap& base, const Grading& source, const Grading& target,
                          int grade, std::size_t degree) {
  const std::size_t rs = M.rows(), rt = M.cols();
  if (M.nvars() != base.source_dim) throw DimensionError("graded pullback: matrix and base map live on different charts");
  const auto from = graded_basis(base.target_dim(), rt, degree, target, grade);
  const auto to = graded_basis(base.source_dim, rs, degree, source, grade);
  std::map<std::pair<IndexTuple, Exponent>, std::size_t> index;
  for (std::size_t t = 0; t < to.size(); ++t) index[{to[t].frames, to[t].exponent}] = t;
  const auto tuples = increasing_tuples(rs, degree);
  RatMatrix out(to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    const Polynomial moved = base.pull(Polynomial::monomial(from[col].exponent, Rational(1)));
    for (const auto& P : tuples) {
      const Polynomial image = determinant(M.submatrix(P, from[col].frames)) * moved;
      for (const auto& [e, c] : image.terms()) {
        auto it = index.find({P, e});
        if (it == index.end()) {
          throw GradingError("pullback maps " + describe_monomial(from[col].exponent, from[col].frames) + " (grade " +
                                 std::to_string(grade) + ") to " + describe_monomial(e, P) + " under grading '" +
                                 source.name + "'",
                             Polynomial::monomial(from[col].exponent, Rational(1)), Polynomial::monomial(e, c));
        }
        out.at(it->second, col) += c;
      }
    }
  }
  return out;
}

std::map<int, std::vector<std::size_t>> algebroid_cohomology(const AlgebroidPresentation& A, const Grading& grading,
                                                             int cap) {
  A.check_shapes();
  std::map<int, std::vector<std::size_t>> total;
  for (const auto& piece : A.pieces) {
    for (const auto& [g, b] : complex_cohomology(de_rham_complex(piece, grading, cap))) {
      auto& slot = total[g];
      if (slot.empty()) slot.assign(b.size(), 0);
      for (std::size_t k = 0; k < b.size(); ++k) slot[k] += b[k];
    }
  }
  return total;
}

}  // namespace algebroidkit
