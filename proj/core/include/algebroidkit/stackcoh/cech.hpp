#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "algebroidkit/algebroid/cohomology.hpp"
#include "algebroidkit/groupoid/groupoid_algebroid.hpp"
#include "algebroidkit/stackcoh/nerve.hpp"

namespace algebroidkit {

/// Čech double complex of the de Rham sheaf of a groupoid algebroid, one double complex per grade.
/// Piece (n, k) is Ω^k of A over X_n in the given grade: one copy of the graded piece of Ω^k(A) per
/// component of X_n, components in nerve order. Horizontal is d_A, vertical is Σ (−1)^i d_i^*.
struct CechDoubleComplex {
  NerveData nerve;
  Grading grading;
  std::size_t N = 0;
  std::size_t K = 0;
  std::map<int, DoubleComplex> grades;
};

/// Matrix of T_g: ω ↦ ψ_{g⁻¹}^* ω(g⁻¹ ·) on the graded piece (grade, degree), in the basis of
/// graded_basis. T is a left action of G. Throws GradingError when T_g leaves the grade.
RatMatrix translation_matrix(const GroupoidAlgebroid& GA, std::size_t g, const Grading& grading, int grade,
                             std::size_t degree);

/// Grades 0..cap, nerve levels 0..N, form degrees 0..K. Throws PreconditionError when GA fails
/// verification and GradingError when d_A or a face pullback leaves a grade.
CechDoubleComplex build_cech_complex(const GroupoidAlgebroid& GA, std::size_t N, std::size_t K, const Grading& grading,
                                     int cap);

/// Inhomogeneous group cochains C^n(G; M) with M the graded piece of Ω^k(A) and G acting by T_g:
/// (δf)(g_1,…,g_{n+1}) = T_{g_1} f(g_2,…) + Σ_{i=1}^{n} (−1)^i f(…, g_i g_{i+1}, …) + (−1)^{n+1} f(g_1,…,g_n).
CochainComplex bar_cochain_complex(const GroupoidAlgebroid& GA, const Grading& grading, int grade, std::size_t degree,
                                   std::size_t N);

/// Nerve identities, double-complex identities per grade, and every vertical column equal to
/// bar_cochain_complex.
Verdict verify_cech_complex(const GroupoidAlgebroid& GA, const CechDoubleComplex& C);

/// Total Betti numbers summed over grades, degrees 0..max_degree, with reliability flags.
std::vector<TotalBetti> cech_cohomology(const CechDoubleComplex& C, std::size_t max_degree);

/// Subcomplex of G-invariant forms (common fixed space of all T_g) per grade 0..cap. Closure
/// under d_A is verified; a violation raises ComplexError.
GradedComplex invariant_complex(const GroupoidAlgebroid& GA, const Grading& grading, int cap);

struct CechComparison {
  std::vector<TotalBetti> total;      // summed over grades
  std::vector<std::size_t> invariant;  // summed over grades, padded to the same length
  bool equal = false;                 // agreement in every reliable degree
  Verdict verdict;
};

/// Builds the Čech complex with N = K and compares total cohomology in degrees < N with the
/// cohomology of the invariant complex.
CechComparison compare_total_vs_invariants(const GroupoidAlgebroid& GA, std::size_t N, const Grading& grading, int cap);

}  // namespace algebroidkit
