#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dat {

/// Exact rational number backed by GMP. Always canonical: lowest terms,
/// positive denominator. Arithmetic and comparisons are exact; nothing in
/// this class touches floating point except the explicit to_double()
/// diagnostic accessor.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long long value) : q_(static_cast<long>(value)) {}
  Rational(long value) : q_(value) {}
  Rational(int value) : q_(value) {}
  Rational(long long num, long long den);
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p/q", an integer literal, or a decimal literal ("0.16" -> 4/25).
  /// Throws ParseError on malformed input.
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational floor() const;
  Rational ceil() const;
  /// Fractional part x - floor(x), always in [0, 1).
  Rational frac() const;

  /// "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;
  /// Lossy conversion for diagnostics and statistics only.
  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dat
