#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algebroidkit/algebroid/presentation.hpp"
#include "algebroidkit/error.hpp"

namespace algebroidkit {

using IndexTuple = std::vector<std::size_t>;

/// Binomial coefficient C(n, k) (0 when k > n).
std::size_t binomial(std::size_t n, std::size_t k);
/// All strictly increasing k-tuples from {0..r−1}, in lexicographic order.
std::vector<IndexTuple> increasing_tuples(std::size_t r, std::size_t k);
/// Position of a strictly increasing tuple in increasing_tuples(r, tuple.size()).
std::size_t tuple_rank(std::size_t r, const IndexTuple& tuple);
/// Sorts `tuple` in place and returns the permutation sign, or 0 when an index repeats.
int sort_with_sign(IndexTuple& tuple);

/// Raised when d is applied to a form of top degree.
class TopDegreeError : public Error {
 public:
  using Error::Error;
};

/// Section of Λ^k A* ⊗ E over one chart, in the basis e^J ⊗ ε_α with J strictly increasing.
/// Scalar forms have fiber_rank 1.
struct AlgebroidForm {
  std::size_t rank = 0;
  std::size_t nvars = 0;
  std::size_t degree = 0;
  std::size_t fiber_rank = 1;
  /// Component of e^J ⊗ ε_α is stored at tuple_rank(J) * fiber_rank + α.
  std::vector<Polynomial> components;

  static AlgebroidForm zero(std::size_t rank, std::size_t nvars, std::size_t degree, std::size_t fiber_rank = 1);
  /// The 0-form f.
  static AlgebroidForm function(std::size_t rank, const Polynomial& f);
  /// The 1-form e^i.
  static AlgebroidForm coframe(std::size_t rank, std::size_t nvars, std::size_t i);

  /// Value on frame elements listed in any order (antisymmetric extension).
  Polynomial value(const IndexTuple& args, std::size_t alpha = 0) const;
  Polynomial& at(const IndexTuple& increasing, std::size_t alpha = 0);
  bool is_zero() const;
  /// (e^J, α) of the first nonzero component, if any.
  std::optional<std::pair<IndexTuple, std::size_t>> first_nonzero() const;

  friend AlgebroidForm operator+(const AlgebroidForm& a, const AlgebroidForm& b);
  friend AlgebroidForm operator-(const AlgebroidForm& a, const AlgebroidForm& b);
  friend bool operator==(const AlgebroidForm&, const AlgebroidForm&) = default;
};

/// Connection coefficients: gamma[i] is the m × m matrix with ∇_{e_i} ε_α = Σ_β gamma[i](α, β) ε_β.
using Connection = std::vector<PolyMatrix>;

/// d_A on scalar forms. Throws TopDegreeError when ω has degree rank.
AlgebroidForm de_rham_d(const LocalStructure& A, const AlgebroidForm& omega);

/// d_{A,∇} on E-valued forms.
AlgebroidForm de_rham_d(const LocalStructure& A, const Connection& gamma, const AlgebroidForm& omega);

/// Wedge product of scalar forms; zero when the degrees exceed the rank.
AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b);

/// Checks d_A ∘ d_A = 0 on every coordinate function and every coframe element of every
/// component. Coordinate failures report a([e_i,e_j]) − [a(e_i),a(e_j)] applied to x_μ; coframe
/// failures report the component of d_A d_A e^k.
Verdict verify_algebroid(const AlgebroidPresentation& A);
Verdict verify_local(const LocalStructure& A);

}  // namespace algebroidkit
