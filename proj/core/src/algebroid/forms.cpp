#include "algebroidkit/algebroid/forms.hpp"

#include <algorithm>
#include <functional>

namespace algebroidkit {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<IndexTuple> increasing_tuples(std::size_t r, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > r) return out;
  IndexTuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == r - k + i - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

std::size_t tuple_rank(std::size_t r, const IndexTuple& tuple) {
  const std::size_t k = tuple.size();
  std::size_t idx = 0, prev = 0;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t v = (p == 0 ? 0 : prev + 1); v < tuple[p]; ++v) idx += binomial(r - 1 - v, k - 1 - p);
    prev = tuple[p];
  }
  return idx;
}

int sort_with_sign(IndexTuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] == t[i]) return 0;
  return sign;
}

AlgebroidForm AlgebroidForm::zero(std::size_t rank, std::size_t nvars, std::size_t degree, std::size_t fiber_rank) {
  if (degree > rank) throw TopDegreeError("form degree " + std::to_string(degree) + " exceeds rank " + std::to_string(rank));
  AlgebroidForm f;
  f.rank = rank;
  f.nvars = nvars;
  f.degree = degree;
  f.fiber_rank = fiber_rank;
  f.components.assign(binomial(rank, degree) * fiber_rank, Polynomial(nvars));
  return f;
}

AlgebroidForm AlgebroidForm::function(std::size_t rank, const Polynomial& f) {
  AlgebroidForm w = zero(rank, f.nvars(), 0);
  w.components[0] = f;
  return w;
}

AlgebroidForm AlgebroidForm::coframe(std::size_t rank, std::size_t nvars, std::size_t i) {
  AlgebroidForm w = zero(rank, nvars, 1);
  w.components.at(i) = Polynomial::constant(nvars, Rational(1));
  return w;
}

Polynomial AlgebroidForm::value(const IndexTuple& args, std::size_t alpha) const {
  if (args.size() != degree) throw DimensionError("form evaluated on the wrong number of arguments");
  IndexTuple t = args;
  const int s = sort_with_sign(t);
  if (s == 0) return Polynomial(nvars);
  const Polynomial& c = components[tuple_rank(rank, t) * fiber_rank + alpha];
  return s > 0 ? c : -c;
}

Polynomial& AlgebroidForm::at(const IndexTuple& increasing, std::size_t alpha) {
  return components.at(tuple_rank(rank, increasing) * fiber_rank + alpha);
}

bool AlgebroidForm::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<std::pair<IndexTuple, std::size_t>> AlgebroidForm::first_nonzero() const {
  const auto tuples = increasing_tuples(rank, degree);
  for (std::size_t t = 0; t < tuples.size(); ++t)
    for (std::size_t a = 0; a < fiber_rank; ++a)
      if (!components[t * fiber_rank + a].is_zero()) return std::make_pair(tuples[t], a);
  return std::nullopt;
}

namespace {
void check_compatible(const AlgebroidForm& a, const AlgebroidForm& b) {
  if (a.rank != b.rank || a.nvars != b.nvars || a.degree != b.degree || a.fiber_rank != b.fiber_rank) {
    throw DimensionError("forms of different shapes");
  }
}
}  // namespace

AlgebroidForm operator+(const AlgebroidForm& a, const AlgebroidForm& b) {
  check_compatible(a, b);
  AlgebroidForm r = a;
  for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += b.components[i];
  return r;
}

AlgebroidForm operator-(const AlgebroidForm& a, const AlgebroidForm& b) {
  check_compatible(a, b);
  AlgebroidForm r = a;
  for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] -= b.components[i];
  return r;
}

AlgebroidForm de_rham_d(const LocalStructure& A, const Connection& gamma, const AlgebroidForm& omega) {
  const std::size_t r = A.rank(), m = omega.fiber_rank, k = omega.degree;
  if (omega.rank != r || omega.nvars != A.dim()) throw DimensionError("form does not belong to this algebroid");
  if (!gamma.empty()) {
    if (gamma.size() != r) throw DimensionError("connection needs one matrix per frame element");
    for (const auto& g : gamma) {
      if (g.rows() != m || g.cols() != m) throw DimensionError("connection matrices must match the fiber rank");
    }
  }
  if (k >= r) throw TopDegreeError("d applied in top degree " + std::to_string(k) + " (rank " + std::to_string(r) + ")");
  AlgebroidForm out = AlgebroidForm::zero(r, A.dim(), k + 1, m);
  const auto tuples = increasing_tuples(r, k + 1);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const IndexTuple& J = tuples[t];
    for (std::size_t i = 0; i <= k; ++i) {
      IndexTuple rest;
      for (std::size_t q = 0; q <= k; ++q)
        if (q != i) rest.push_back(J[q]);
      const bool neg = i % 2 == 1;
      for (std::size_t alpha = 0; alpha < m; ++alpha) {
        Polynomial term = A.anchor_apply(J[i], omega.value(rest, alpha));
        if (!gamma.empty()) {
          for (std::size_t beta = 0; beta < m; ++beta) {
            const Polynomial& g = gamma[J[i]].at(beta, alpha);
            if (!g.is_zero()) term += omega.value(rest, beta) * g;
          }
        }
        Polynomial& slot = out.components[t * m + alpha];
        if (neg) slot -= term; else slot += term;
      }
    }
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t l = i + 1; l <= k; ++l) {
        IndexTuple rest;
        for (std::size_t q = 0; q <= k; ++q)
          if (q != i && q != l) rest.push_back(J[q]);
        const bool neg = (i + l) % 2 == 1;
        for (std::size_t mm = 0; mm < r; ++mm) {
          const Polynomial c = A.bracket(J[i], J[l], mm);
          if (c.is_zero()) continue;
          IndexTuple args{mm};
          args.insert(args.end(), rest.begin(), rest.end());
          for (std::size_t alpha = 0; alpha < m; ++alpha) {
            const Polynomial w = omega.value(args, alpha);
            if (w.is_zero()) continue;
            Polynomial& slot = out.components[t * m + alpha];
            if (neg) slot -= c * w; else slot += c * w;
          }
        }
      }
    }
  }
  return out;
}

AlgebroidForm de_rham_d(const LocalStructure& A, const AlgebroidForm& omega) {
  if (omega.fiber_rank != 1) throw DimensionError("scalar d applied to a vector-valued form");
  return de_rham_d(A, Connection{}, omega);
}

AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b) {
  if (a.rank != b.rank || a.nvars != b.nvars || a.fiber_rank != 1 || b.fiber_rank != 1) {
    throw DimensionError("wedge of incompatible forms");
  }
  const std::size_t r = a.rank, p = a.degree, q = b.degree;
  if (p + q > r) throw TopDegreeError("wedge product exceeds the rank");
  AlgebroidForm out = AlgebroidForm::zero(r, a.nvars, p + q);
  const auto tuples = increasing_tuples(r, p + q);
  const auto picks = increasing_tuples(p + q, p);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const IndexTuple& K = tuples[t];
    for (const auto& pick : picks) {
      IndexTuple I, J, order;
      std::vector<bool> in(p + q, false);
      for (std::size_t x : pick) in[x] = true;
      for (std::size_t x = 0; x < p + q; ++x) (in[x] ? I : J).push_back(K[x]);
      order = I;
      order.insert(order.end(), J.begin(), J.end());
      const int s = sort_with_sign(order);
      const Polynomial prod = a.value(I) * b.value(J);
      if (prod.is_zero()) continue;
      if (s > 0) out.components[t] += prod; else out.components[t] -= prod;
    }
  }
  return out;
}

Verdict verify_local(const LocalStructure& A) {
  Verdict v;
  const std::size_t r = A.rank(), n = A.dim();
  if (r >= 2) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      const AlgebroidForm dd = de_rham_d(A, de_rham_d(A, AlgebroidForm::function(r, Polynomial::variable(n, mu))));
      const auto tuples = increasing_tuples(r, 2);
      bool ok = true;
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        if (dd.components[t].is_zero()) continue;
        ok = false;
        v.fail("d∘d(" + coordinate_name(mu) + ") on (" + frame_name(tuples[t][0]) + "," + frame_name(tuples[t][1]) + ")",
               "anchor-bracket incompatibility: " + coordinate_name(mu) + "-component of a([" +
                   frame_name(tuples[t][0]) + "," + frame_name(tuples[t][1]) + "]) − [a(" + frame_name(tuples[t][0]) +
                   "),a(" + frame_name(tuples[t][1]) + ")]",
               -dd.components[t]);
      }
      if (ok) v.record("d∘d(" + coordinate_name(mu) + ") = 0");
    }
  }
  if (r >= 3) {
    for (std::size_t k = 0; k < r; ++k) {
      const AlgebroidForm dd = de_rham_d(A, de_rham_d(A, AlgebroidForm::coframe(r, n, k)));
      const auto tuples = increasing_tuples(r, 3);
      bool ok = true;
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        if (dd.components[t].is_zero()) continue;
        ok = false;
        v.fail("d∘d(" + coframe_name(k) + ") on (" + frame_name(tuples[t][0]) + "," + frame_name(tuples[t][1]) + "," +
                   frame_name(tuples[t][2]) + ")",
               "Jacobi failure", dd.components[t]);
      }
      if (ok) v.record("d∘d(" + coframe_name(k) + ") = 0");
    }
  }
  return v;
}

Verdict verify_algebroid(const AlgebroidPresentation& A) {
  A.check_shapes();
  Verdict v;
  for (std::size_t c = 0; c < A.pieces.size(); ++c) {
    const std::string prefix = A.base.kind() == ChartBase::Kind::DisjointUnion ? "component " + A.base.components()[c].label : "";
    v.absorb(verify_local(A.pieces[c]), prefix);
  }
  return v;
}

}  // namespace algebroidkit
