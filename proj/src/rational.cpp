#include "dat/rational.hpp"

#include <cctype>
#include <ostream>

#include "dat/errors.hpp"

namespace dat {

namespace {

bool valid_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view full) {
  if (!valid_integer_literal(s)) {
    throw ParseError("invalid rational literal: '" + std::string(full) + "'");
  }
  return mpz_class(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ParseError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    mpz_class den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view fracpart = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) whole.remove_prefix(1);
    if (whole.empty() && fracpart.empty()) throw ParseError("invalid rational literal: '" + std::string(text) + "'");
    mpz_class scale = 1;
    mpz_class value = whole.empty() ? mpz_class(0) : parse_integer(whole, text);
    if (!fracpart.empty()) {
      for (char c : fracpart) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          throw ParseError("invalid rational literal: '" + std::string(text) + "'");
        }
      }
      mpz_class digits(std::string(fracpart), 10);
      for (std::size_t i = 0; i < fracpart.size(); ++i) scale *= 10;
      value = value * scale + digits;
    }
    if (negative) value = -value;
    return Rational(value, scale);
  }

  return Rational(parse_integer(s, text), mpz_class(1));
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return Rational(q, mpz_class(1));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return Rational(q, mpz_class(1));
}

Rational Rational::frac() const { return *this - floor(); }

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dat
