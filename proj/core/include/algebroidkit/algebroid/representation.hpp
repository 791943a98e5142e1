#pragma once

#include <cstddef>
#include <vector>

#include "algebroidkit/algebroid/forms.hpp"

namespace algebroidkit {

/// Flat A-connection on a trivial bundle of rank m, per base component.
struct RepresentationPresentation {
  AlgebroidPresentation algebroid;
  std::size_t fiber_rank = 0;
  std::vector<Connection> gamma;  // gamma[component][i] is m × m

  /// Zero connection.
  static RepresentationPresentation trivial(const AlgebroidPresentation& A, std::size_t fiber_rank);

  friend bool operator==(const RepresentationPresentation&, const RepresentationPresentation&) = default;
};

struct RepresentationResult {
  Verdict verdict;
  AlgebroidForm image;
};

/// Flatness verdict (d²_{A,∇} = 0 on every ε_α of every component). Throws DimensionError on
/// shape mismatch.
Verdict verify_representation(const RepresentationPresentation& R);

/// Flatness verdict together with d_{A,∇} ω for an E-valued form on the given component.
RepresentationResult rep_verify_and_d(const RepresentationPresentation& R, const AlgebroidForm& omega,
                                      std::size_t component = 0);

}  // namespace algebroidkit
