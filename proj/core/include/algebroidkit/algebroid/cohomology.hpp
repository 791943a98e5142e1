#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroidkit/algebroid/forms.hpp"
#include "algebroidkit/exactalg/complexes.hpp"

namespace algebroidkit {

/// Grading of polynomial forms: x^e e^J has grade Σ coordinate_weights·e + Σ_{j∈J} frame_weights[j].
/// Coordinate weights must be positive so that each grade is finite-dimensional.
struct Grading {
  std::string name;
  std::vector<int> coordinate_weights;
  std::vector<int> frame_weights;

  /// "polynomial": coordinates weigh 1, frames weigh 0. "total": both weigh 1.
  static Grading preset(const std::string& name, std::size_t dim, std::size_t rank);
  int grade_of(const Exponent& e, const IndexTuple& frames) const;
};

/// Raised when d_A leaves a graded piece.
class GradingError : public Error {
 public:
  GradingError(const std::string& what, Polynomial source, Polynomial image_term)
      : Error(what), source_(std::move(source)), image_term_(std::move(image_term)) {}
  /// The basis monomial that was differentiated and the offending monomial of its image.
  const Polynomial& source() const { return source_; }
  const Polynomial& image_term() const { return image_term_; }

 private:
  Polynomial source_;
  Polynomial image_term_;
};

/// Graded de Rham complex of a single-chart algebroid, grades 0..cap. Throws GradingError.
GradedComplex de_rham_complex(const LocalStructure& A, const Grading& grading, int cap);

/// Per-grade Betti numbers of the de Rham complex (grades 0..cap).
std::map<int, std::vector<std::size_t>> algebroid_cohomology(const AlgebroidPresentation& A, const Grading& grading,
                                                             int cap);

/// Basis of graded piece (grade, degree): monomial forms x^e e^J in a fixed order.
struct GradedBasisElement {
  IndexTuple frames;
  Exponent exponent;
};
std::vector<GradedBasisElement> graded_basis(std::size_t dim, std::size_t rank, std::size_t degree,
                                             const Grading& grading, int grade);

/// Pullback of forms along a bundle map covering `base`: M is rank_source × rank_target over the
/// source chart in row convention, and (M^*ω)_P = Σ_Q det M[P,Q] · base^*ω_Q. Returns the matrix
/// from the target graded piece (grade, degree) to the source one, bases as in graded_basis.
/// Throws GradingError when the image leaves the grade.
RatMatrix graded_pullback(const PolyMatrix& M, const PolyMap& base, const Grading& source, const Grading& target,
                          int grade, std::size_t degree);

}  // namespace algebroidkit
