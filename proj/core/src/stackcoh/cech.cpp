#include "algebroidkit/stackcoh/cech.hpp"

#include <map>
#include <utility>

#include "algebroidkit/algebroid/forms.hpp"

namespace algebroidkit {

namespace {

std::size_t power(std::size_t base, std::size_t e) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < e; ++i) p *= base;
  return p;
}

void place(RatMatrix& target, std::size_t row0, std::size_t col0, const RatMatrix& block, int sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      if (!block.at(i, j).is_zero()) target.at(row0 + i, col0 + j) += sign > 0 ? block.at(i, j) : -block.at(i, j);
}

RatMatrix block_diagonal(const RatMatrix& block, std::size_t copies) {
  RatMatrix out(block.rows() * copies, block.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c) place(out, c * block.rows(), c * block.cols(), block, 1);
  return out;
}

// Per grade: bases of every form degree, de Rham differentials, and T_g matrices.
struct GradePieces {
  std::vector<std::size_t> dims;             // by form degree 0..rank
  std::vector<RatMatrix> d;                  // d[k]: degree k → k+1
  std::vector<std::vector<RatMatrix>> trans;  // trans[k][g]
};

RatMatrix piece_matrix(const std::vector<GradePieces>& pieces, int grade, std::size_t k, bool horizontal,
                       std::size_t g) {
  const GradePieces& p = pieces.at(static_cast<std::size_t>(grade));
  const std::size_t r = p.dims.size() - 1;
  const std::size_t rows = horizontal ? (k + 1 <= r ? p.dims[k + 1] : 0) : (k <= r ? p.dims[k] : 0);
  const std::size_t cols = k <= r ? p.dims[k] : 0;
  if (horizontal) return k < r ? p.d[k] : RatMatrix(rows, cols);
  return k <= r ? p.trans[k][g] : RatMatrix(rows, cols);
}

std::vector<GradePieces> grade_pieces(const GroupoidAlgebroid& GA, const Grading& grading, int cap) {
  const LocalStructure& A = GA.algebroid.local();
  const std::size_t r = A.rank();
  const GradedComplex dr = de_rham_complex(A, grading, cap);
  std::vector<GradePieces> out;
  for (int grade = 0; grade <= cap; ++grade) {
    GradePieces p;
    const CochainComplex& cc = dr.grades.at(grade);
    p.dims = cc.dims;
    p.d = cc.differentials;
    for (std::size_t k = 0; k <= r; ++k) {
      std::vector<RatMatrix> t;
      for (std::size_t g = 0; g < GA.groupoid.order(); ++g) t.push_back(translation_matrix(GA, g, grading, grade, k));
      p.trans.push_back(std::move(t));
    }
    out.push_back(std::move(p));
  }
  return out;
}

void require_valid(const GroupoidAlgebroid& GA) {
  if (!verify_groupoid_algebroid(GA).valid) throw PreconditionError("Čech complex: groupoid algebroid fails verification");
  if (!GA.algebroid.base.is_single_chart()) throw PreconditionError("Čech complex: the algebroid must live on one chart");
}

std::vector<std::size_t> digits(std::size_t index, std::size_t order, std::size_t length) {
  std::vector<std::size_t> s(length);
  for (std::size_t i = length; i-- > 0;) {
    s[i] = index % order;
    index /= order;
  }
  return s;
}

}  // namespace

RatMatrix translation_matrix(const GroupoidAlgebroid& GA, std::size_t g, const Grading& grading, int grade,
                             std::size_t degree) {
  const std::size_t back = GA.groupoid.inverse(g);
  return graded_pullback(GA.psi.at(back), GA.groupoid.action.at(back), grading, grading, grade, degree);
}

CechDoubleComplex build_cech_complex(const GroupoidAlgebroid& GA, std::size_t N, std::size_t K, const Grading& grading,
                                     int cap) {
  require_valid(GA);
  CechDoubleComplex out;
  out.nerve = build_nerve(GA.groupoid, N);
  out.grading = grading;
  out.N = N;
  out.K = K;
  const auto pieces = grade_pieces(GA, grading, cap);
  const DeskGroupoid& G = GA.groupoid;
  for (int grade = 0; grade <= cap; ++grade) {
    const GradePieces& p = pieces[static_cast<std::size_t>(grade)];
    const std::size_t r = p.dims.size() - 1;
    DoubleComplex D;
    D.N = N;
    D.K = K;
    D.dims.assign(N + 1, std::vector<std::size_t>(K + 1, 0));
    D.horizontal.resize(N + 1);
    D.vertical.resize(N);
    for (std::size_t n = 0; n <= N; ++n) {
      const std::size_t C = out.nerve.component_count(n);
      for (std::size_t k = 0; k <= K; ++k) D.dims[n][k] = C * (k <= r ? p.dims[k] : 0);
      for (std::size_t k = 0; k < K; ++k) D.horizontal[n].push_back(block_diagonal(piece_matrix(pieces, grade, k, true, 0), C));
    }
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t k = 0; k <= K; ++k) {
        const std::size_t b = k <= r ? p.dims[k] : 0;
        RatMatrix V(D.dims[n + 1][k], D.dims[n][k]);
        const auto& faces = out.nerve.faces[n + 1];
        for (std::size_t i = 0; i < faces.size(); ++i) {
          for (std::size_t c = 0; c < out.nerve.component_count(n + 1); ++c) {
            const std::size_t src = faces[i].component[c];
            const std::size_t g = G.inverse(faces[i].arrow[c]);
            place(V, c * b, src * b, piece_matrix(pieces, grade, k, false, g), i % 2 == 0 ? 1 : -1);
          }
        }
        D.vertical[n].push_back(std::move(V));
      }
    }
    out.grades[grade] = std::move(D);
  }
  return out;
}

CochainComplex bar_cochain_complex(const GroupoidAlgebroid& GA, const Grading& grading, int grade, std::size_t degree,
                                   std::size_t N) {
  const DeskGroupoid& G = GA.groupoid;
  const std::size_t order = G.order();
  const std::size_t b = graded_basis(G.dim, GA.algebroid.rank, degree, grading, grade).size();
  std::vector<RatMatrix> T;
  for (std::size_t g = 0; g < order; ++g) T.push_back(translation_matrix(GA, g, grading, grade, degree));
  const RatMatrix I = RatMatrix::identity(b);
  CochainComplex cc;
  for (std::size_t n = 0; n <= N; ++n) cc.dims.push_back(power(order, n) * b);
  for (std::size_t n = 0; n < N; ++n) {
    RatMatrix delta(cc.dims[n + 1], cc.dims[n]);
    for (std::size_t row = 0; row < power(order, n + 1); ++row) {
      const auto s = digits(row, order, n + 1);
      auto encode = [&](const std::vector<std::size_t>& t) {
        std::size_t c = 0;
        for (std::size_t x : t) c = c * order + x;
        return c;
      };
      place(delta, row * b, encode({s.begin() + 1, s.end()}) * b, T[s[0]], 1);
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> t(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i - 1));
        t.push_back(G.multiply(s[i - 1], s[i]));
        t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 1), s.end());
        place(delta, row * b, encode(t) * b, I, i % 2 == 0 ? 1 : -1);
      }
      place(delta, row * b, encode({s.begin(), s.end() - 1}) * b, I, (n + 1) % 2 == 0 ? 1 : -1);
    }
    cc.differentials.push_back(std::move(delta));
  }
  return cc;
}

Verdict verify_cech_complex(const GroupoidAlgebroid& GA, const CechDoubleComplex& C) {
  Verdict v;
  v.absorb(verify_nerve(C.nerve), "nerve");
  const std::size_t r = GA.algebroid.rank;
  for (const auto& [grade, D] : C.grades) {
    const std::string where = "grade " + std::to_string(grade);
    try {
      validate_double_complex(D);
      v.record(where + ": d_A² = 0, vertical d² = 0, d_A commutes with the face pullbacks");
    } catch (const ComplexError& e) {
      v.fail(where, e.what(), Polynomial::constant(GA.groupoid.dim, Rational(1)));
    }
    for (std::size_t k = 0; k <= std::min(C.K, r); ++k) {
      const CochainComplex bar = bar_cochain_complex(GA, C.grading, grade, k, C.N);
      bool same = true;
      for (std::size_t n = 0; n < C.N && same; ++n) {
        const RatMatrix diff = D.vertical[n][k] - bar.differentials[n];
        if (diff.is_zero()) continue;
        same = false;
        Rational entry;
        for (std::size_t i = 0; i < diff.rows() && entry.is_zero(); ++i)
          for (std::size_t j = 0; j < diff.cols() && entry.is_zero(); ++j) entry = diff.at(i, j);
        v.fail(where + ", column " + std::to_string(k) + ", row " + std::to_string(n),
               "vertical differential differs from the bar cochain differential",
               Polynomial::constant(GA.groupoid.dim, entry));
      }
      if (same) v.record(where + ": column " + std::to_string(k) + " is the bar cochain complex with coefficients in degree-" +
                         std::to_string(k) + " forms");
    }
  }
  return v;
}

std::vector<TotalBetti> cech_cohomology(const CechDoubleComplex& C, std::size_t max_degree) {
  std::vector<TotalBetti> sum;
  for (const auto& [grade, D] : C.grades) {
    const auto b = total_cohomology(D, max_degree);
    if (sum.empty()) {
      sum = b;
    } else {
      for (std::size_t t = 0; t < b.size(); ++t) sum[t].betti += b[t].betti;
    }
  }
  return sum;
}

GradedComplex invariant_complex(const GroupoidAlgebroid& GA, const Grading& grading, int cap) {
  require_valid(GA);
  const auto pieces = grade_pieces(GA, grading, cap);
  GradedComplex out;
  for (int grade = 0; grade <= cap; ++grade) {
    const GradePieces& p = pieces[static_cast<std::size_t>(grade)];
    const std::size_t r = p.dims.size() - 1;
    std::vector<RatMatrix> basis;  // columns span the invariant forms of each degree
    for (std::size_t k = 0; k <= r; ++k) {
      const std::size_t b = p.dims[k];
      const std::size_t order = GA.groupoid.order();
      RatMatrix stacked(b * (order - 1), b);
      for (std::size_t g = 1; g < order; ++g) place(stacked, (g - 1) * b, 0, p.trans[k][g] - RatMatrix::identity(b), 1);
      basis.push_back(RatMatrix::from_columns(kernel_basis(stacked), b));
    }
    CochainComplex cc;
    for (const auto& B : basis) cc.dims.push_back(B.cols());
    for (std::size_t k = 0; k < r; ++k) {
      auto X = solve(basis[k + 1], p.d[k] * basis[k]);
      if (!X) {
        throw ComplexError("d_A leaves the invariant forms in grade " + std::to_string(grade) + " at degree " +
                               std::to_string(k),
                           grade, static_cast<int>(k));
      }
      cc.differentials.push_back(std::move(*X));
    }
    out.grades[grade] = std::move(cc);
  }
  validate_complex(out);
  return out;
}

CechComparison compare_total_vs_invariants(const GroupoidAlgebroid& GA, std::size_t N, const Grading& grading, int cap) {
  if (N == 0) throw DimensionError("comparison needs N ≥ 1");
  CechComparison out;
  const CechDoubleComplex C = build_cech_complex(GA, N, N, grading, cap);
  out.verdict.absorb(verify_cech_complex(GA, C));
  out.total = cech_cohomology(C, N - 1);
  out.invariant.assign(N, 0);
  for (const auto& [grade, b] : complex_cohomology(invariant_complex(GA, grading, cap)))
    for (std::size_t k = 0; k < b.size() && k < N; ++k) out.invariant[k] += b[k];
  for (std::size_t t = 0; t < N; ++t) {
    if (!out.total[t].reliable) continue;
    if (out.total[t].betti == out.invariant[t]) {
      out.verdict.record("degree " + std::to_string(t) + ": total Betti " + std::to_string(out.total[t].betti) +
                         " = invariant Betti");
    } else {
      out.verdict.fail("degree " + std::to_string(t), "total and invariant Betti numbers differ",
                       Polynomial::constant(GA.groupoid.dim, Rational(static_cast<long>(out.total[t].betti) -
                                                                      static_cast<long>(out.invariant[t]))));
    }
  }
  out.equal = out.verdict.valid;
  return out;
}

}  // namespace algebroidkit
