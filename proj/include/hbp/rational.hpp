#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "hbp/error.hpp"

namespace hbp {

/// Exact rational number. Always stored in lowest terms with positive
/// denominator. All solver arithmetic goes through this type; floating
/// point never enters a solver path.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    internal_check(den != 0, "Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& z) : v_(z) {}
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  /// Accepts "p", "p/q", and decimal strings like "0.35" or "-1.25".
  /// Returns nullopt on anything else (no exponents, no whitespace inside).
  static std::optional<Rational> parse(std::string_view s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_positive() const { return sgn(v_) > 0; }
  bool is_negative() const { return sgn(v_) < 0; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational reciprocal() const {
    internal_check(!is_zero(), "Rational: reciprocal of zero");
    return Rational(mpq_class(1 / v_));
  }

  /// value^e for integer e (negative e requires a nonzero value).
  Rational pow(long e) const;

  mpz_class floor() const;
  mpz_class ceil() const;
  long floor_long() const;
  long ceil_long() const;

  /// Canonical exact form: "p" when the denominator is 1, else "p/q".
  std::string str() const { return v_.get_str(); }
  /// Truncated decimal rendering, display only, never fed back into math.
  std::string decimal(int max_frac_digits = 9) const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    internal_check(!o.is_zero(), "Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

 private:
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace hbp
