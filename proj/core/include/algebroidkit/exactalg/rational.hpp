#pragma once

#include <concepts>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace algebroidkit {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral T, std::integral U>
  Rational(T num, U den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "-p" or "p/q" (q nonzero). Throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

  /// "p" when the value is an integer, "p/q" otherwise.
  std::string str() const;

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& value() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational inverse() const;
  Rational pow(unsigned e) const;

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace algebroidkit
