#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace blowup {

// mpq_class keeps num/den gcd-reduced with positive denominator after canonicalize()
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& s)
{
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int sign(const Rational& r) { return sgn(r); }

inline Rational rpow(const Rational& b, unsigned e)
{
  Rational out = 1;
  Rational base = b;
  while (e) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1u;
  }
  return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline long double to_long_double(const Rational& r)
{
  // get_d loses the extra 80-bit mantissa bits; divide the integers instead
  mpf_class n(r.get_num(), 128), d(r.get_den(), 128);
  mpf_class q = n / d;
  long exp = 0;
  double mant = mpf_get_d_2exp(&exp, q.get_mpf_t());
  mpf_class rem = q - mpf_class(std::ldexp(mant, static_cast<int>(exp)), 128);
  return static_cast<long double>(std::ldexp(mant, static_cast<int>(exp))) +
         static_cast<long double>(rem.get_d());
}

inline double to_double_any(const Rational& r) { return r.get_d(); }
inline double to_double_any(double x) { return x; }
inline double to_double_any(long double x) { return static_cast<double>(x); }

// Gaussian rational a + b i, enough for exact imaginary-axis evaluation
struct GaussRational {
  Rational re{0}, im{0};

  friend GaussRational operator+(const GaussRational& x, const GaussRational& y) { return {x.re + y.re, x.im + y.im}; }
  friend GaussRational operator-(const GaussRational& x, const GaussRational& y) { return {x.re - y.re, x.im - y.im}; }
  friend GaussRational operator*(const GaussRational& x, const GaussRational& y)
  {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  Rational norm2() const { return re * re + im * im; }
};

} // namespace blowup
