#pragma once

#include "blowup/poly.hpp"
#include "blowup/rational.hpp"

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blowup {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  UPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }

  static UPoly from_poly(const Poly& p, std::size_t var = 0)
  {
    std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1);
    for (const auto& [e, k] : p.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != var && e[i] != 0) throw std::invalid_argument("polynomial is not univariate");
      c[static_cast<std::size_t>(e[var])] += k;
    }
    return UPoly(std::move(c));
  }

  Poly to_poly(const std::string& var) const
  {
    Poly p({var});
    for (std::size_t k = 0; k < c_.size(); ++k) p.add_term({static_cast<int>(k)}, c_[k]);
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const
  {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  template <class T>
  T eval(const T& x) const
  {
    T acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(it->get_d());
    return acc;
  }

  UPoly derivative() const
  {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b)
  {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b)
  {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a)
  {
    UPoly out = a;
    for (auto& x : out.c_) x = -x;
    return out;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b)
  {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Rational& s, const UPoly& a)
  {
    UPoly out = a;
    for (auto& x : out.c_) x *= s;
    out.trim();
    return out;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // a = q*b + r with deg r < deg b
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
  {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    int db = b.degree();
    std::vector<Rational> q(static_cast<std::size_t>(std::max(a.degree() - db + 1, 0)));
    for (int k = a.degree() - db; k >= 0; --k) {
      Rational f = r[static_cast<std::size_t>(k + db)] / b.lead();
      q[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const
  {
    if (is_zero()) return *this;
    return (1 / lead()) * *this;
  }

  static UPoly gcd(UPoly a, UPoly b)
  {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  UPoly squarefree_part() const
  {
    if (degree() < 1) return *this;
    return divmod(*this, gcd(*this, derivative())).first;
  }

  std::string str(const std::string& var = "x") const { return to_poly(var).str(); }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Reduced quotient of univariate polynomials.
struct RatFun {
  UPoly num{Rational(0)};
  UPoly den{Rational(1)};

  RatFun() = default;
  RatFun(UPoly n, UPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
  explicit RatFun(const Rational& c) : num({c}), den({Rational(1)}) {}

  void normalize()
  {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
      den = UPoly{Rational(1)};
      return;
    }
    UPoly g = UPoly::gcd(num, den);
    if (g.degree() > 0) {
      num = UPoly::divmod(num, g).first;
      den = UPoly::divmod(den, g).first;
    }
    Rational l = den.lead();
    num = (1 / l) * num;
    den = (1 / l) * den;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend RatFun operator*(const RatFun& a, const RatFun& b) { return {a.num * b.num, a.den * b.den}; }
  friend RatFun operator/(const RatFun& a, const RatFun& b)
  {
    if (b.num.is_zero()) throw std::domain_error("rational function division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  bool is_zero() const { return num.is_zero(); }
  Rational operator()(const Rational& x) const { return num(x) / den(x); }
};

} // namespace blowup
