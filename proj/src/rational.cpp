#include "hbp/rational.hpp"

#include <cctype>

namespace hbp {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
  }

  auto finish = [&](mpq_class q) {
    q.canonicalize();
    if (neg) q = -q;
    return Rational(std::move(q));
  };

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return std::nullopt;
    mpz_class den(std::string(q), 10);
    if (den == 0) return std::nullopt;
    return finish(mpq_class(mpz_class(std::string(p), 10), den));
  }

  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (!all_digits(fp)) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    mpz_class intpart = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class frac(std::string(fp), 10);
    return finish(mpq_class(intpart * scale + frac, scale));
  }

  if (!all_digits(s)) return std::nullopt;
  return finish(mpq_class(mpz_class(std::string(s), 10)));
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long ue = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  internal_check(!inv || !is_zero(), "Rational: 0 to a negative power");
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
  mpq_class r(n, d);
  r.canonicalize();
  Rational out{std::move(r)};
  return inv ? out.reciprocal() : out;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

long Rational::floor_long() const {
  mpz_class f = floor();
  internal_check(f.fits_slong_p(), "Rational: floor out of long range");
  return f.get_si();
}

long Rational::ceil_long() const {
  mpz_class c = ceil();
  internal_check(c.fits_slong_p(), "Rational: ceil out of long range");
  return c.get_si();
}

std::string Rational::decimal(int max_frac_digits) const {
  mpz_class n = v_.get_num(), d = v_.get_den();
  std::string sign = n < 0 ? "-" : "";
  n = ::abs(n);
  mpz_class ip = n / d, rem = n % d;
  std::string out = sign + ip.get_str();
  if (rem == 0) return out;
  out += '.';
  for (int i = 0; i < max_frac_digits && rem != 0; ++i) {
    rem *= 10;
    out += (mpz_class(rem / d)).get_str();
    rem %= d;
  }
  while (out.back() == '0') out.pop_back();
  return out;
}

}  // namespace hbp
