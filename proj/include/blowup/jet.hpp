#pragma once

#include <cmath>
#include <concepts>
#include <type_traits>
#include <utility>

namespace blowup {

// Truncated Taylor polynomial v + d1 t + d2 t^2/2 along one direction.  Exact
// for rational T, so residuals of rational closed forms vanish identically.
template <class T>
struct Jet2 {
  T v{}, d1{}, d2{};

  Jet2() = default;
  Jet2(T value, T first, T second) : v(std::move(value)), d1(std::move(first)), d2(std::move(second)) {}
  template <class U>
    requires(std::constructible_from<T, const U&> && !std::same_as<std::remove_cvref_t<U>, Jet2>)
  Jet2(const U& c) : v(T(c)), d1(T(0)), d2(T(0))
  {
  }

  static Jet2 variable(const T& x, const T& dx) { return {x, dx, T(0)}; }

  Jet2& operator+=(const Jet2& o)
  {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet2& operator-=(const Jet2& o)
  {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator-(const Jet2& a) { return {T(-a.v), T(-a.d1), T(-a.d2)}; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b)
  {
    return {T(a.v * b.v), T(a.d1 * b.v + a.v * b.d1), T(a.d2 * b.v + T(2) * a.d1 * b.d1 + a.v * b.d2)};
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.inverse(); }

  Jet2 inverse() const
  {
    T r = T(1) / v;
    T r2 = r * r;
    return {r, T(-d1 * r2), T(-d2 * r2 + T(2) * d1 * d1 * r2 * r)};
  }
};

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet2<T>> : std::true_type {};

template <class J>
J ipow(const J& x, unsigned k)
{
  J out(1);
  for (unsigned i = 0; i < k; ++i) out = out * x;
  return out;
}

// real powers for floating jets; x.v > 0
template <class T>
Jet2<T> jpow(const Jet2<T>& x, const T& p)
{
  using std::pow;
  T f1 = p * pow(x.v, p - T(1));
  T f2 = p * (p - T(1)) * pow(x.v, p - T(2));
  return {pow(x.v, p), f1 * x.d1, f2 * x.d1 * x.d1 + f1 * x.d2};
}

template <class T>
Jet2<T> jsqrt(const Jet2<T>& x)
{
  return jpow(x, T(0.5));
}

} // namespace blowup
