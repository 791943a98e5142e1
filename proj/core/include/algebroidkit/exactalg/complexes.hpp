#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "algebroidkit/error.hpp"
#include "algebroidkit/exactalg/rat_matrix.hpp"

namespace algebroidkit {

/// Raised when consecutive differentials do not compose to zero.
class ComplexError : public Error {
 public:
  ComplexError(const std::string& what, int grade, int degree)
      : Error(what), grade_(grade), degree_(degree) {}
  int grade() const { return grade_; }
  int degree() const { return degree_; }

 private:
  int grade_;
  int degree_;
};

/// Cochain complex 0 -> V_0 -> V_1 -> ... -> V_top -> 0 of finite-dimensional rational spaces.
/// differentials[d] maps V_d to V_{d+1}: dims[d+1] rows, dims[d] columns.
struct CochainComplex {
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> differentials;
};

/// Complex split into finitely many grades, each preserved by the differential.
struct GradedComplex {
  std::map<int, CochainComplex> grades;
};

/// Throws DimensionError on inconsistent shapes and ComplexError when d∘d ≠ 0.
void validate_complex(const GradedComplex& c);

/// Betti numbers per grade: dim ker d_d − rank d_{d−1}.
std::map<int, std::vector<std::size_t>> complex_cohomology(const GradedComplex& c);

/// Betti numbers of a single ungraded complex (validated first).
std::vector<std::size_t> cochain_cohomology(const CochainComplex& c);

/// Double complex with pieces (n, k), 0 ≤ n ≤ N and 0 ≤ k ≤ K.
/// horizontal[n][k]: (n,k) -> (n,k+1), defined for k < K.
/// vertical[n][k]:   (n,k) -> (n+1,k), defined for n < N.
/// The two differentials commute; the total differential is h + (−1)^k v on column k.
struct DoubleComplex {
  std::size_t N = 0;
  std::size_t K = 0;
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<RatMatrix>> horizontal;
  std::vector<std::vector<RatMatrix>> vertical;
};

struct TotalBetti {
  std::size_t degree = 0;
  std::size_t betti = 0;
  bool reliable = false;
};

/// Checks shapes, h² = 0, v² = 0 and h∘v = v∘h (ComplexError with grade = row n on failure).
void validate_double_complex(const DoubleComplex& d);

/// The total complex Tot^t = ⊕_{n+k=t} (n,k), truncated at t = N + K.
CochainComplex total_complex(const DoubleComplex& d);

/// Betti numbers of the total complex up to max_total_degree. Degree t is flagged reliable when
/// t < min(N, K), i.e. the computation never meets a truncated row or column.
std::vector<TotalBetti> total_cohomology(const DoubleComplex& d, std::size_t max_total_degree);

}  // namespace algebroidkit
