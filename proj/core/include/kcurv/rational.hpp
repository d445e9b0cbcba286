#pragma once

#include <gmpxx.h>

#include <concepts>
#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kcurv {

/// Exact rational number in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class q);

  /// Accepts "7", "-3/4", "1.25", "-1.5e-3".
  static Rational parse(std::string_view text);
  /// Numerator/denominator given as decimal integer strings.
  static Rational from_parts(std::string_view num, std::string_view den);
  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  const mpq_class& get() const noexcept { return q_; }
  std::string numerator() const;
  std::string denominator() const;
  std::string str() const;
  double to_double() const;
  int sign() const noexcept { return sgn(q_); }
  bool is_zero() const noexcept { return sgn(q_) == 0; }
  bool is_integer() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  Rational operator-() const;

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

using RationalVector = std::vector<Rational>;

}  // namespace kcurv
