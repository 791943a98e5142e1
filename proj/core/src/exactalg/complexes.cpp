#include "algebroidkit/exactalg/complexes.hpp"

#include <algorithm>
#include <string>

namespace algebroidkit {

namespace {

void validate_cochain(const CochainComplex& c, int grade) {
  if (c.dims.empty()) throw DimensionError("complex in grade " + std::to_string(grade) + " has no pieces");
  if (c.differentials.size() + 1 != c.dims.size()) {
    throw DimensionError("complex in grade " + std::to_string(grade) + " needs one differential per degree");
  }
  for (std::size_t d = 0; d < c.differentials.size(); ++d) {
    const RatMatrix& m = c.differentials[d];
    if (m.cols() != c.dims[d] || m.rows() != c.dims[d + 1]) {
      throw DimensionError("differential in grade " + std::to_string(grade) + ", degree " + std::to_string(d) +
                           " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
  for (std::size_t d = 0; d + 1 < c.differentials.size(); ++d) {
    if (!(c.differentials[d + 1] * c.differentials[d]).is_zero()) {
      throw ComplexError("d∘d ≠ 0 in grade " + std::to_string(grade) + " at degree " + std::to_string(d), grade,
                         static_cast<int>(d));
    }
  }
}

std::vector<std::size_t> betti_unchecked(const CochainComplex& c) {
  std::vector<std::size_t> ranks(c.differentials.size());
  for (std::size_t d = 0; d < ranks.size(); ++d) ranks[d] = rank(c.differentials[d]);
  std::vector<std::size_t> b(c.dims.size());
  for (std::size_t d = 0; d < c.dims.size(); ++d) {
    const std::size_t out = d < ranks.size() ? ranks[d] : 0;
    const std::size_t in = d > 0 ? ranks[d - 1] : 0;
    b[d] = c.dims[d] - out - in;
  }
  return b;
}

}  // namespace

void validate_complex(const GradedComplex& c) {
  for (const auto& [grade, cc] : c.grades) validate_cochain(cc, grade);
}

std::map<int, std::vector<std::size_t>> complex_cohomology(const GradedComplex& c) {
  validate_complex(c);
  std::map<int, std::vector<std::size_t>> out;
  for (const auto& [grade, cc] : c.grades) out[grade] = betti_unchecked(cc);
  return out;
}

std::vector<std::size_t> cochain_cohomology(const CochainComplex& c) {
  validate_cochain(c, 0);
  return betti_unchecked(c);
}

void validate_double_complex(const DoubleComplex& d) {
  const std::size_t N = d.N, K = d.K;
  if (d.dims.size() != N + 1) throw DimensionError("double complex needs N+1 rows of pieces");
  if (d.horizontal.size() != N + 1 || d.vertical.size() != N) {
    throw DimensionError("double complex differential tables have wrong length");
  }
  for (std::size_t n = 0; n <= N; ++n) {
    if (d.dims[n].size() != K + 1 || d.horizontal[n].size() != K) {
      throw DimensionError("double complex row " + std::to_string(n) + " has wrong length");
    }
    for (std::size_t k = 0; k < K; ++k) {
      const RatMatrix& h = d.horizontal[n][k];
      if (h.cols() != d.dims[n][k] || h.rows() != d.dims[n][k + 1]) {
        throw DimensionError("horizontal differential at (" + std::to_string(n) + "," + std::to_string(k) +
                             ") has wrong shape");
      }
    }
    if (n < N) {
      if (d.vertical[n].size() != K + 1) throw DimensionError("vertical row has wrong length");
      for (std::size_t k = 0; k <= K; ++k) {
        const RatMatrix& v = d.vertical[n][k];
        if (v.cols() != d.dims[n][k] || v.rows() != d.dims[n + 1][k]) {
          throw DimensionError("vertical differential at (" + std::to_string(n) + "," + std::to_string(k) +
                               ") has wrong shape");
        }
      }
    }
  }
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t k = 0; k + 1 < K; ++k) {
      if (!(d.horizontal[n][k + 1] * d.horizontal[n][k]).is_zero()) {
        throw ComplexError("horizontal d∘d ≠ 0 at (" + std::to_string(n) + "," + std::to_string(k) + ")",
                           static_cast<int>(n), static_cast<int>(k));
      }
    }
  }
  for (std::size_t n = 0; n + 1 < N; ++n) {
    for (std::size_t k = 0; k <= K; ++k) {
      if (!(d.vertical[n + 1][k] * d.vertical[n][k]).is_zero()) {
        throw ComplexError("vertical d∘d ≠ 0 at (" + std::to_string(n) + "," + std::to_string(k) + ")",
                           static_cast<int>(n), static_cast<int>(k));
      }
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      if (!(d.horizontal[n + 1][k] * d.vertical[n][k] == d.vertical[n][k + 1] * d.horizontal[n][k])) {
        throw ComplexError("horizontal and vertical differentials do not commute at (" + std::to_string(n) + "," +
                               std::to_string(k) + ")",
                           static_cast<int>(n), static_cast<int>(k));
      }
    }
  }
}

CochainComplex total_complex(const DoubleComplex& d) {
  const std::size_t N = d.N, K = d.K, T = N + K;
  // offsets[t][n]: position of piece (n, t−n) inside Tot^t.
  std::vector<std::vector<std::size_t>> offsets(T + 1, std::vector<std::size_t>(N + 1, 0));
  CochainComplex tot;
  tot.dims.assign(T + 1, 0);
  for (std::size_t t = 0; t <= T; ++t) {
    for (std::size_t n = 0; n <= N; ++n) {
      offsets[t][n] = tot.dims[t];
      if (n <= t && t - n <= K) tot.dims[t] += d.dims[n][t - n];
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    RatMatrix D(tot.dims[t + 1], tot.dims[t]);
    for (std::size_t n = 0; n <= N && n <= t; ++n) {
      const std::size_t k = t - n;
      if (k > K) continue;
      const std::size_t src = offsets[t][n];
      if (k < K) {
        const RatMatrix& h = d.horizontal[n][k];
        const std::size_t dst = offsets[t + 1][n];
        for (std::size_t i = 0; i < h.rows(); ++i)
          for (std::size_t j = 0; j < h.cols(); ++j) D.at(dst + i, src + j) = h.at(i, j);
      }
      if (n < N) {
        const RatMatrix& v = d.vertical[n][k];
        const std::size_t dst = offsets[t + 1][n + 1];
        const bool odd = k % 2 == 1;
        for (std::size_t i = 0; i < v.rows(); ++i)
          for (std::size_t j = 0; j < v.cols(); ++j) D.at(dst + i, src + j) = odd ? -v.at(i, j) : v.at(i, j);
      }
    }
    tot.differentials.push_back(std::move(D));
  }
  return tot;
}

std::vector<TotalBetti> total_cohomology(const DoubleComplex& d, std::size_t max_total_degree) {
  if (d.N < max_total_degree || d.K < max_total_degree) {
    throw DimensionError("double complex caps N=" + std::to_string(d.N) + ", K=" + std::to_string(d.K) +
                         " are below the requested total degree " + std::to_string(max_total_degree));
  }
  validate_double_complex(d);
  const CochainComplex tot = total_complex(d);
  for (std::size_t t = 0; t + 1 < tot.differentials.size() && t < max_total_degree; ++t) {
    if (!(tot.differentials[t + 1] * tot.differentials[t]).is_zero()) {
      throw ComplexError("total differential squares to a nonzero map at degree " + std::to_string(t), 0,
                         static_cast<int>(t));
    }
  }
  // Only D_0 .. D_max enter the requested Betti numbers.
  std::vector<std::size_t> ranks(max_total_degree + 1, 0);
  for (std::size_t t = 0; t <= max_total_degree && t < tot.differentials.size(); ++t) {
    ranks[t] = rank(tot.differentials[t]);
  }
  std::vector<std::size_t> b(max_total_degree + 1);
  for (std::size_t t = 0; t <= max_total_degree; ++t) {
    b[t] = tot.dims[t] - ranks[t] - (t > 0 ? ranks[t - 1] : 0);
  }
  const std::size_t reliable_below = std::min(d.N, d.K);
  std::vector<TotalBetti> out;
  for (std::size_t t = 0; t <= max_total_degree; ++t) out.push_back({t, b[t], t < reliable_below});
  return out;
}

}  // namespace algebroidkit
