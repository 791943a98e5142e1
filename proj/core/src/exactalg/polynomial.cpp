#include "algebroidkit/exactalg/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(Exponent exponent, const Rational& c) {
  Polynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (unsigned e : terms_.begin()->first) {
    if (e != 0) return false;
  }
  return true;
}

Rational Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (unsigned x : e) d += static_cast<int>(x);
    best = std::max(best, d);
  }
  return best;
}

int Polynomial::degree_in(std::size_t axis) const {
  if (axis >= nvars_) throw DimensionError("axis out of range");
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[axis]));
  return best;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw DimensionError("exponent length does not match chart dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_same_ring(const Polynomial& o, const char* op) const {
  if (o.nvars_ != nvars_) {
    throw DimensionError(std::string("polynomial ") + op + ": chart dimensions " + std::to_string(nvars_) +
                         " and " + std::to_string(o.nvars_) + " differ");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_ring(o, "+");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_ring(o, "-");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_ring(b, "*");
  Polynomial r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(nvars_, Rational(1));
  Polynomial b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

Polynomial Polynomial::derive(std::size_t axis) const {
  if (axis >= nvars_) {
    throw DimensionError("derivative axis " + std::to_string(axis) + " out of range for chart dimension " +
                         std::to_string(nvars_));
  }
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponent d = e;
    d[axis] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(e[axis])));
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const {
  if (images.size() != nvars_) {
    throw DimensionError("substitution arity " + std::to_string(images.size()) + " does not match chart dimension " +
                         std::to_string(nvars_));
  }
  for (const auto& im : images) {
    if (im.nvars() != target_nvars) throw DimensionError("substitution images live on different charts");
  }
  // powers[i][k] = images[i]^k, filled lazily.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target_nvars, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Polynomial r(target_nvars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target_nvars, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) term = term * power(i, e[i]);
    }
    r += term;
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
  Rational r(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t *= point[i].pow(e[i]);
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw DimensionError("embedding does not fit in the target chart");
  Polynomial r(nvars);
  Exponent big(nvars, 0);
  for (const auto& [e, c] : terms_) {
    std::fill(big.begin(), big.end(), 0u);
    for (std::size_t i = 0; i < nvars_; ++i) big[offset + i] = e[i];
    r.add_term(big, c);
  }
  return r;
}

const std::pair<const Exponent, Rational>& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return *terms_.rbegin();
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  check_same_ring(d, "/");
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  Polynomial q(nvars_);
  Polynomial r = *this;
  const auto& [ld, cd] = d.leading_term();
  Exponent shift(nvars_);
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading_term();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (lr[i] < ld[i]) return std::nullopt;
      shift[i] = lr[i] - ld[i];
    }
    Polynomial step = monomial(shift, cr / cd);
    q += step;
    r -= step * d;
  }
  return q;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) vars << "*";
      has_var = true;
      vars << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) vars << "^" << e[i];
    }
    if (!has_var) {
      os << mag.str();
    } else if (mag.is_one()) {
      os << vars.str();
    } else {
      os << mag.str() << "*" << vars.str();
    }
  }
  return os.str();
}

Polynomial poly_derive(const Polynomial& p, std::size_t axis) { return p.derive(axis); }

Polynomial poly_substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
  if (images.size() != p.nvars()) {
    throw DimensionError("substitution arity " + std::to_string(images.size()) + " does not match chart dimension " +
                         std::to_string(p.nvars()));
  }
  if (images.empty()) return p;
  return p.substitute(images, images.front().nvars());
}

}  // namespace algebroidkit
