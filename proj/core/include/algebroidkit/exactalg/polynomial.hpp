#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroidkit/exactalg/rational.hpp"

namespace algebroidkit {

/// Exponent multi-index; its length is the number of chart coordinates.
using Exponent = std::vector<unsigned>;

/// Sparse polynomial with rational coefficients on an affine chart with `nvars` coordinates.
/// Terms are kept in lexicographic order of exponents; no zero coefficient is ever stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(Exponent exponent, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Nonzero constant, i.e. a unit of the polynomial ring.
  bool is_unit() const { return is_constant() && !is_zero(); }
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  /// Degree in a single coordinate; -1 for the zero polynomial.
  int degree_in(std::size_t axis) const;

  /// Adds c·x^e in place.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned e) const;
  Polynomial derive(std::size_t axis) const;
  /// Composition p(images[0], ..., images[n-1]); every image lives on a chart of dimension target_nvars.
  Polynomial substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Re-reads the polynomial on a chart with `nvars` coordinates, variable i becoming variable offset+i.
  Polynomial embed(std::size_t nvars, std::size_t offset = 0) const;
  /// Quotient q with q·d = *this, when it exists in the polynomial ring.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  /// Leading term under lexicographic order (x0 > x1 > ...). Requires a nonzero polynomial.
  const std::pair<const Exponent, Rational>& leading_term() const;

  /// Renders as e.g. "2*x0^2*x1 - 3/4*x1 + 1" (highest term first). Empty names mean x0, x1, ...
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void check_same_ring(const Polynomial& o, const char* op) const;

  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Formal partial derivative with respect to coordinate `axis`.
Polynomial poly_derive(const Polynomial& p, std::size_t axis);

/// Composition with a list of images; the arity must equal p.nvars() and images must be non-empty
/// or p must live on the point chart.
Polynomial poly_substitute(const Polynomial& p, const std::vector<Polynomial>& images);

}  // namespace algebroidkit
