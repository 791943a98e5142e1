#include "algebroidkit/poisson/schouten.hpp"

#include <map>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

using Terms = std::map<IndexTuple, Polynomial>;

void add(Terms& out, IndexTuple theta, const Polynomial& c, int sign) {
  if (c.is_zero()) return;
  const int s = sort_with_sign(theta) * sign;
  if (s == 0) return;
  auto [it, fresh] = out.try_emplace(std::move(theta), c.nvars());
  if (s > 0) {
    it->second += c;
  } else {
    it->second -= c;
  }
}

PolyVectorField from_terms(std::size_t n, std::size_t degree, const Terms& t) {
  PolyVectorField out = PolyVectorField::zero(n, degree);
  for (const auto& [I, c] : t) out.at(I) += c;
  return out;
}

IndexTuple without(const IndexTuple& I, std::size_t pos) {
  IndexTuple r = I;
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
  return r;
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void check_same(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.nvars != b.nvars) throw DimensionError("polyvector fields live on different charts");
}

}  // namespace

PolyVectorField PolyVectorField::zero(std::size_t nvars, std::size_t degree) {
  PolyVectorField out;
  out.nvars = nvars;
  out.degree = degree;
  out.components.assign(binomial(nvars, degree), Polynomial(nvars));
  return out;
}

PolyVectorField PolyVectorField::function(std::size_t nvars, const Polynomial& f) {
  PolyVectorField out = zero(nvars, 0);
  out.components[0] = f;
  return out;
}

PolyVectorField PolyVectorField::vector_field(const std::vector<Polynomial>& v) {
  PolyVectorField out = zero(v.size(), 1);
  out.components = v;
  return out;
}

PolyVectorField PolyVectorField::bivector(const PolyMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n || M.nvars() != n) throw DimensionError("bivector matrix must be n × n over Affine(n)");
  PolyVectorField out = zero(n, 2);
  for (std::size_t mu = 0; mu < n; ++mu) {
    if (!M.at(mu, mu).is_zero()) throw PreconditionError("bivector matrix is not skew");
    for (std::size_t nu = mu + 1; nu < n; ++nu) {
      if (!(M.at(mu, nu) == -M.at(nu, mu))) throw PreconditionError("bivector matrix is not skew");
      out.at({mu, nu}) = M.at(mu, nu);
    }
  }
  return out;
}

Polynomial PolyVectorField::value(const IndexTuple& indices) const {
  if (indices.size() != degree) throw DimensionError("polyvector evaluated with the wrong number of indices");
  IndexTuple t = indices;
  const int s = sort_with_sign(t);
  if (s == 0) return Polynomial(nvars);
  const Polynomial& c = components[tuple_rank(nvars, t)];
  return s > 0 ? c : -c;
}

Polynomial& PolyVectorField::at(const IndexTuple& increasing) { return components.at(tuple_rank(nvars, increasing)); }

bool PolyVectorField::is_zero() const {
  for (const auto& c : components)
    if (!c.is_zero()) return false;
  return true;
}

PolyMatrix PolyVectorField::matrix() const {
  if (degree != 2) throw DimensionError("only bivectors have a matrix");
  PolyMatrix M(nvars, nvars, nvars);
  for (std::size_t mu = 0; mu < nvars; ++mu)
    for (std::size_t nu = 0; nu < nvars; ++nu)
      if (mu != nu) M.at(mu, nu) = value({mu, nu});
  return M;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  check_same(a, b);
  if (a.degree != b.degree) throw DimensionError("polyvector degrees differ");
  PolyVectorField out = a;
  for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] += b.components[i];
  return out;
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
  check_same(a, b);
  if (a.degree != b.degree) throw DimensionError("polyvector degrees differ");
  PolyVectorField out = a;
  for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] -= b.components[i];
  return out;
}

PolyVectorField wedge(const PolyVectorField& P, const PolyVectorField& Q) {
  check_same(P, Q);
  const std::size_t n = P.nvars;
  const auto Is = increasing_tuples(n, P.degree), Js = increasing_tuples(n, Q.degree);
  Terms t;
  for (std::size_t a = 0; a < Is.size(); ++a)
    for (std::size_t b = 0; b < Js.size(); ++b)
      if (!P.components[a].is_zero() && !Q.components[b].is_zero())
        add(t, concat(Is[a], Js[b]), P.components[a] * Q.components[b], 1);
  return from_terms(n, P.degree + Q.degree, t);
}

PolyVectorField schouten_bracket(const PolyVectorField& P, const PolyVectorField& Q) {
  check_same(P, Q);
  const std::size_t n = P.nvars;
  const std::size_t p = P.degree, q = Q.degree;
  if (p + q == 0) return PolyVectorField::zero(n, 0);
  const auto Is = increasing_tuples(n, p), Js = increasing_tuples(n, q);
  Terms t;
  for (std::size_t a = 0; a < Is.size(); ++a) {
    const Polynomial& PI = P.components[a];
    if (PI.is_zero()) continue;
    for (std::size_t b = 0; b < Js.size(); ++b) {
      const Polynomial& QJ = Q.components[b];
      if (QJ.is_zero()) continue;
      const IndexTuple& I = Is[a];
      const IndexTuple& J = Js[b];
      // Right derivative of θ_I by θ_μ: move θ_μ to the end.
      for (std::size_t pos = 0; pos < I.size(); ++pos) {
        const int sign = (I.size() - 1 - pos) % 2 == 0 ? 1 : -1;
        add(t, concat(without(I, pos), J), PI * QJ.derive(I[pos]), sign);
      }
      // Left derivative of θ_J by θ_μ: move θ_μ to the front.
      for (std::size_t pos = 0; pos < J.size(); ++pos) {
        const int sign = pos % 2 == 0 ? -1 : 1;
        add(t, concat(I, without(J, pos)), PI.derive(J[pos]) * QJ, sign);
      }
    }
  }
  return from_terms(n, p + q - 1, t);
}

}  // namespace algebroidkit
