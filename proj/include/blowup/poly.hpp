#pragma once

#include "blowup/rational.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blowup {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial over Q.  Terms live in an ordered map so that
// iteration (and therefore serialization) is deterministic.
class Poly {
public:
  using TermMap = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const Rational& c)
  {
    Poly p(std::move(vars));
    if (c != 0) p.terms_[Exponents(p.arity(), 0)] = c;
    return p;
  }

  static Poly variable(std::vector<std::string> vars, std::size_t i)
  {
    Poly p(std::move(vars));
    if (i >= p.arity()) throw std::out_of_range("variable index");
    Exponents e(p.arity(), 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  static Poly monomial(std::vector<std::string> vars, Exponents e, const Rational& c)
  {
    Poly p(std::move(vars));
    if (e.size() != p.arity()) throw std::invalid_argument("exponent arity mismatch");
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::size_t var_index(const std::string& name) const
  {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw std::out_of_range("unknown variable " + name);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  Rational coeff(const Exponents& e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponents& e, const Rational& c)
  {
    if (e.size() != arity()) throw std::invalid_argument("exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree(std::size_t var) const
  {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  int total_degree() const
  {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  Poly& operator+=(const Poly& o)
  {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o)
  {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s)
  {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a)
  {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b)
  {
    a.check_compatible(b);
    Poly out(a.vars_.empty() ? b.vars_ : a.vars_);
    Exponents e(out.arity());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  Poly pow(unsigned k) const
  {
    Poly out = constant(vars_, 1);
    Poly base = *this;
    while (k) {
      if (k & 1u) out *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return out;
  }

  Poly derivative(std::size_t var) const
  {
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      out.add_term(f, c * e[var]);
    }
    return out;
  }

  // x_var -> q (q must share the variable list)
  Poly substitute(std::size_t var, const Poly& q) const
  {
    check_compatible(q);
    int dmax = std::max(degree(var), 0);
    std::vector<Poly> qpow{constant(vars_, 1)};
    for (int k = 1; k <= dmax; ++k) qpow.push_back(qpow.back() * q);
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[var] = 0;
      out += monomial(vars_, f, c) * qpow[static_cast<std::size_t>(e[var])];
    }
    return out;
  }

  // x_var -> x_var + by
  Poly shift(std::size_t var, const Rational& by) const
  {
    if (by == 0) return *this;
    return substitute(var, variable(vars_, var) + constant(vars_, by));
  }

  template <class T>
  T evaluate(std::span<const T> x) const
  {
    if (x.size() != arity()) throw std::invalid_argument("evaluation arity mismatch");
    T acc{};
    for (const auto& [e, c] : terms_) {
      T term = convert<T>(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  Rational evaluate(std::initializer_list<Rational> x) const
  {
    std::vector<Rational> v(x);
    return evaluate<Rational>(std::span<const Rational>(v));
  }

  // Same terms with variable names replaced (arity unchanged).
  Poly renamed(std::vector<std::string> vars) const
  {
    if (vars.size() != arity()) throw std::invalid_argument("rename arity mismatch");
    Poly out(std::move(vars));
    out.terms_ = terms_;
    return out;
  }

  // Embed into a larger variable list; variables are matched by name.
  Poly embed(const std::vector<std::string>& vars) const
  {
    std::vector<std::size_t> where(arity());
    for (std::size_t i = 0; i < arity(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      if (it == vars.end()) throw std::invalid_argument("embed: variable " + vars_[i] + " missing");
      where[i] = static_cast<std::size_t>(it - vars.begin());
    }
    Poly out(vars);
    for (const auto& [e, c] : terms_) {
      Exponents f(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) f[where[i]] = e[i];
      out.add_term(f, c);
    }
    return out;
  }

  // Remove a variable the polynomial does not depend on.
  Poly drop(std::size_t var) const
  {
    if (degree(var) > 0) throw std::invalid_argument("drop: polynomial depends on " + vars_[var]);
    std::vector<std::string> v = vars_;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(var));
    Poly out(std::move(v));
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
      out.add_term(f, c);
    }
    return out;
  }

  // x_var -> value, then drop the variable
  Poly fix(std::size_t var, const Rational& value) const { return substitute(var, constant(vars_, value)).drop(var); }

  std::vector<std::pair<Exponents, Rational>> negative_terms() const
  {
    std::vector<std::pair<Exponents, Rational>> out;
    for (const auto& [e, c] : terms_)
      if (c < 0) out.emplace_back(e, c);
    return out;
  }

  std::string str() const
  {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      Rational a = abs(c);
      if (mono.empty()) s += a.get_str();
      else if (a == 1) s += mono;
      else s += a.get_str() + "*" + mono;
    }
    return s;
  }

private:
  template <class T>
  static T convert(const Rational& c)
  {
    if constexpr (std::is_same_v<T, Rational>) return c;
    else if constexpr (std::is_same_v<T, GaussRational>) return GaussRational{c, 0};
    else if constexpr (std::is_same_v<T, long double>) return to_long_double(c);
    else return T(c.get_d());
  }

  void check_compatible(const Poly& o) const
  {
    if (vars_ != o.vars_ && !(vars_.empty() && terms_.empty()) && !(o.vars_.empty() && o.terms_.empty()))
      throw std::invalid_argument("polynomials over different variable lists");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

} // namespace blowup
