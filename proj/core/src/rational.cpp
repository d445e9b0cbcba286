#include "kcurv/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "kcurv/error.hpp"

namespace kcurv {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw Error(ErrorCode::parse_error, "not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
  q_ = mpq_class(num, 1) / mpq_class(den, 1);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::from_parts(std::string_view num, std::string_view den) {
  mpz_class n = parse_integer(num);
  mpz_class d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::parse_error, "zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return from_parts(text.substr(0, slash), text.substr(slash + 1));
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    if (!is_decimal_integer(exp_part)) {
      throw Error(ErrorCode::parse_error, "bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    text = text.substr(0, e);
  }

  std::string digits;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw Error(ErrorCode::parse_error, "two decimal points");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw Error(ErrorCode::parse_error, "unexpected character '" + std::string(1, c) + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::parse_error, "no digits");

  mpz_class n(digits, 10);
  if (negative) n = -n;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift < 0 ? mpq_class(n, scale) : mpq_class(n * scale, 1);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::invalid_argument, "non-finite double");
  return Rational(mpq_class(value));
}

std::string Rational::numerator() const { return q_.get_num().get_str(10); }
std::string Rational::denominator() const { return q_.get_den().get_str(10); }

std::string Rational::str() const {
  if (q_.get_den() == 1) return numerator();
  return numerator() + "/" + denominator();
}

double Rational::to_double() const { return q_.get_d(); }

bool Rational::is_integer() const { return q_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::invalid_argument, "division by zero");
  q_ /= o.q_;
  return *this;
}
Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace kcurv
