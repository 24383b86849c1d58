#pragma once

// Second-order forward-mode jets: value + gradient + symmetric Hessian,
// truncated at order two.  The scalar type S may itself be a jet, which is
// how third- and fourth-order information is obtained (nested towers).
//
// Arity (number of independent variables) is a runtime property bounded by
// the compile-time capacity Cap.  Constants carry arity 0 and combine with
// operands of any arity; two distinct nonzero arities in one operation are
// a logic error and throw.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parageo {

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(std::string("parageo: ") + msg);
}

// innermost double of a (possibly nested) jet
inline double value_of(double x) { return x; }

template <class S, int Cap>
struct Jet {
  static constexpr int cap = Cap;
  static constexpr int hsize = Cap * (Cap + 1) / 2;
  using scalar = S;

  S v{};
  std::array<S, Cap> g{};
  std::array<S, hsize> h{};
  int n = 0;

  Jet() = default;
  Jet(double c) : v(c) {}  // implicit: constants promote
  template <class T = S>
    requires(!std::is_same_v<T, double>)
  explicit Jet(const S& c) : v(c) {}

  // packed upper-triangular Hessian index, i <= j
  static constexpr int hidx(int i, int j) {
    return i * (2 * Cap - i - 1) / 2 + j;
  }
  S& hess(int i, int j) { return h[i <= j ? hidx(i, j) : hidx(j, i)]; }
  const S& hess(int i, int j) const {
    return h[i <= j ? hidx(i, j) : hidx(j, i)];
  }
};

template <class S, int Cap>
double value_of(const Jet<S, Cap>& x) {
  return value_of(x.v);
}

// independent variable number i of n, seeded on top of inner value `val`
template <class J>
J jet_var(const typename J::scalar& val, int i, int n) {
  require(n <= J::cap && i >= 0 && i < n, "jet_var: arity out of range");
  J r;
  r.v = val;
  r.g[i] = typename J::scalar(1.0);
  r.n = n;
  return r;
}

namespace detail {
template <class S, int Cap>
int join_arity(const Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  if (a.n != 0 && b.n != 0 && a.n != b.n)
    throw std::runtime_error("parageo: jet arity mismatch");
  return a.n > b.n ? a.n : b.n;
}
}  // namespace detail

// ---- ring operations ----

template <class S, int Cap>
Jet<S, Cap> operator+(const Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  Jet<S, Cap> r;
  r.n = detail::join_arity(a, b);
  r.v = a.v + b.v;
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] + b.g[i];
  const int hs = r.n * (2 * Cap - r.n + 1) / 2;  // used prefix of packed rows
  for (int k = 0; k < hs; ++k) r.h[k] = a.h[k] + b.h[k];
  return r;
}

template <class S, int Cap>
Jet<S, Cap> operator-(const Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  Jet<S, Cap> r;
  r.n = detail::join_arity(a, b);
  r.v = a.v - b.v;
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] - b.g[i];
  const int hs = r.n * (2 * Cap - r.n + 1) / 2;
  for (int k = 0; k < hs; ++k) r.h[k] = a.h[k] - b.h[k];
  return r;
}

template <class S, int Cap>
Jet<S, Cap> operator-(const Jet<S, Cap>& a) {
  Jet<S, Cap> r;
  r.n = a.n;
  r.v = -a.v;
  for (int i = 0; i < r.n; ++i) r.g[i] = -a.g[i];
  const int hs = r.n * (2 * Cap - r.n + 1) / 2;
  for (int k = 0; k < hs; ++k) r.h[k] = -a.h[k];
  return r;
}

template <class S, int Cap>
Jet<S, Cap> operator*(const Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  Jet<S, Cap> r;
  r.n = detail::join_arity(a, b);
  r.v = a.v * b.v;
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = i; j < r.n; ++j) {
      const int k = Jet<S, Cap>::hidx(i, j);
      r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
    }
  return r;
}

// chain rule for f(x) given f, f', f'' evaluated at x.v (as inner scalars)
template <class S, int Cap>
Jet<S, Cap> apply_unary(const Jet<S, Cap>& x, const S& f0, const S& f1,
                        const S& f2) {
  Jet<S, Cap> r;
  r.n = x.n;
  r.v = f0;
  for (int i = 0; i < r.n; ++i) r.g[i] = f1 * x.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = i; j < r.n; ++j) {
      const int k = Jet<S, Cap>::hidx(i, j);
      r.h[k] = f2 * (x.g[i] * x.g[j]) + f1 * x.h[k];
    }
  return r;
}

template <class S, int Cap>
Jet<S, Cap> reciprocal(const Jet<S, Cap>& x) {
  require(std::abs(value_of(x.v)) > 0.0, "jet reciprocal of zero value");
  const S one_over = S(1.0) / x.v;  // requires S division; double base case
  const S f1 = -one_over * one_over;
  const S f2 = S(2.0) * one_over * one_over * one_over;
  return apply_unary(x, one_over, f1, f2);
}

template <class S, int Cap>
Jet<S, Cap> operator/(const Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  return a * reciprocal(b);
}

// mixed double overloads (cheaper than promoting the constant)
template <class S, int Cap>
Jet<S, Cap> operator+(const Jet<S, Cap>& a, double c) {
  Jet<S, Cap> r = a;
  r.v = a.v + S(c);
  return r;
}
template <class S, int Cap>
Jet<S, Cap> operator+(double c, const Jet<S, Cap>& a) {
  return a + c;
}
template <class S, int Cap>
Jet<S, Cap> operator-(const Jet<S, Cap>& a, double c) {
  return a + (-c);
}
template <class S, int Cap>
Jet<S, Cap> operator-(double c, const Jet<S, Cap>& a) {
  return (-a) + c;
}
template <class S, int Cap>
Jet<S, Cap> operator*(const Jet<S, Cap>& a, double c) {
  Jet<S, Cap> r;
  r.n = a.n;
  r.v = a.v * S(c);
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] * S(c);
  const int hs = r.n * (2 * Cap - r.n + 1) / 2;
  for (int k = 0; k < hs; ++k) r.h[k] = a.h[k] * S(c);
  return r;
}
template <class S, int Cap>
Jet<S, Cap> operator*(double c, const Jet<S, Cap>& a) {
  return a * c;
}
template <class S, int Cap>
Jet<S, Cap> operator/(const Jet<S, Cap>& a, double c) {
  return a * (1.0 / c);
}
template <class S, int Cap>
Jet<S, Cap> operator/(double c, const Jet<S, Cap>& a) {
  return reciprocal(a) * c;
}

template <class S, int Cap>
Jet<S, Cap>& operator+=(Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  a = a + b;
  return a;
}
template <class S, int Cap>
Jet<S, Cap>& operator-=(Jet<S, Cap>& a, const Jet<S, Cap>& b) {
  a = a - b;
  return a;
}

// ---- elementary functions (recursive over nesting via overload) ----

using std::acos;
using std::acosh;
using std::asin;
using std::asinh;
using std::atan;
using std::atan2;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

template <class S, int Cap>
Jet<S, Cap> sin(const Jet<S, Cap>& x) {
  const S s = sin(x.v), c = cos(x.v);
  return apply_unary(x, s, c, -s);
}
template <class S, int Cap>
Jet<S, Cap> cos(const Jet<S, Cap>& x) {
  const S s = sin(x.v), c = cos(x.v);
  return apply_unary(x, c, -s, -c);
}
template <class S, int Cap>
Jet<S, Cap> tan(const Jet<S, Cap>& x) {
  const S t = tan(x.v);
  const S d = S(1.0) + t * t;
  return apply_unary(x, t, d, S(2.0) * t * d);
}
template <class S, int Cap>
Jet<S, Cap> exp(const Jet<S, Cap>& x) {
  const S e = exp(x.v);
  return apply_unary(x, e, e, e);
}
template <class S, int Cap>
Jet<S, Cap> log(const Jet<S, Cap>& x) {
  require(value_of(x.v) > 0.0, "jet log of non-positive value");
  const S inv = S(1.0) / x.v;
  return apply_unary(x, log(x.v), inv, -inv * inv);
}
template <class S, int Cap>
Jet<S, Cap> sqrt(const Jet<S, Cap>& x) {
  require(value_of(x.v) > 0.0, "jet sqrt of non-positive value");
  const S s = sqrt(x.v);
  const S f1 = S(0.5) / s;
  const S f2 = S(-0.25) / (s * x.v);
  return apply_unary(x, s, f1, f2);
}
template <class S, int Cap>
Jet<S, Cap> sinh(const Jet<S, Cap>& x) {
  const S s = sinh(x.v), c = cosh(x.v);
  return apply_unary(x, s, c, s);
}
template <class S, int Cap>
Jet<S, Cap> cosh(const Jet<S, Cap>& x) {
  const S s = sinh(x.v), c = cosh(x.v);
  return apply_unary(x, c, s, c);
}
template <class S, int Cap>
Jet<S, Cap> tanh(const Jet<S, Cap>& x) {
  const S t = tanh(x.v);
  const S d = S(1.0) - t * t;
  return apply_unary(x, t, d, S(-2.0) * t * d);
}
template <class S, int Cap>
Jet<S, Cap> asinh(const Jet<S, Cap>& x) {
  const S w = S(1.0) + x.v * x.v;
  const S rw = sqrt(w);
  return apply_unary(x, asinh(x.v), S(1.0) / rw, -x.v / (w * rw));
}
template <class S, int Cap>
Jet<S, Cap> acosh(const Jet<S, Cap>& x) {
  require(value_of(x.v) > 1.0, "jet acosh needs value > 1");
  const S w = x.v * x.v - S(1.0);
  const S rw = sqrt(w);
  return apply_unary(x, acosh(x.v), S(1.0) / rw, -x.v / (w * rw));
}
template <class S, int Cap>
Jet<S, Cap> acos(const Jet<S, Cap>& x) {
  require(std::abs(value_of(x.v)) < 1.0, "jet acos needs |value| < 1");
  const S w = S(1.0) - x.v * x.v;
  const S rw = sqrt(w);
  return apply_unary(x, acos(x.v), S(-1.0) / rw, -x.v / (w * rw));
}
template <class S, int Cap>
Jet<S, Cap> asin(const Jet<S, Cap>& x) {
  require(std::abs(value_of(x.v)) < 1.0, "jet asin needs |value| < 1");
  const S w = S(1.0) - x.v * x.v;
  const S rw = sqrt(w);
  return apply_unary(x, asin(x.v), S(1.0) / rw, x.v / (w * rw));
}
template <class S, int Cap>
Jet<S, Cap> atan(const Jet<S, Cap>& x) {
  const S w = S(1.0) + x.v * x.v;
  return apply_unary(x, atan(x.v), S(1.0) / w, S(-2.0) * x.v / (w * w));
}

// atan2(y, x): value from the correct branch, derivatives from the smooth
// field (x dy - y dx)/r^2
template <class S, int Cap>
Jet<S, Cap> atan2(const Jet<S, Cap>& y, const Jet<S, Cap>& x) {
  Jet<S, Cap> r;
  r.n = detail::join_arity(y, x);
  const S xv = x.v, yv = y.v;
  const S r2 = xv * xv + yv * yv;
  require(value_of(r2) > 0.0, "jet atan2 at origin");
  r.v = atan2(yv, xv);
  const S fy = xv / r2, fx = -yv / r2;
  const S r4 = r2 * r2;
  const S fyy = S(-2.0) * xv * yv / r4;
  const S fxx = S(2.0) * xv * yv / r4;
  const S fxy = (yv * yv - xv * xv) / r4;
  for (int i = 0; i < r.n; ++i) r.g[i] = fy * y.g[i] + fx * x.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = i; j < r.n; ++j) {
      const int k = Jet<S, Cap>::hidx(i, j);
      r.h[k] = fyy * (y.g[i] * y.g[j]) + fxx * (x.g[i] * x.g[j]) +
               fxy * (y.g[i] * x.g[j] + x.g[i] * y.g[j]) + fy * y.h[k] +
               fx * x.h[k];
    }
  return r;
}

template <class S, int Cap>
Jet<S, Cap> sqr(const Jet<S, Cap>& x) {
  return x * x;
}
inline double sqr(double x) { return x * x; }

template <class T>
T pow_i(const T& x, int k) {
  require(k >= 0, "pow_i: negative exponent");
  T r = T(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

// ---- the tower used throughout the library ----

using Jet2 = Jet<double, 6>;        // one layer: grad + Hessian in <= 6 vars
using Jet2b = Jet<Jet2, 4>;         // two layers, <= 4 vars
using Jet2c = Jet<Jet2b, 4>;        // three layers, <= 4 vars

// next layer on top of a scalar type
template <class T>
struct lift {};
template <>
struct lift<double> {
  using type = Jet2;
};
template <>
struct lift<Jet2> {
  using type = Jet2b;
};
template <>
struct lift<Jet2b> {
  using type = Jet2c;
};
template <class T>
using lift_t = typename lift<T>::type;

}  // namespace parageo
