#pragma once

// Scalar-generic evaluation of the Lagrangian flow map
//
//   X(t,a,b) = a + (c - m) t - (e^{kb}/k) sin(k(a - m t))
//   Z(t,a,b) = b + (e^{kb}/k) cos(k(a - m t))
//
// and of its inverse. The public API in kinematics.hpp instantiates it with
// double; the residual verification in fields.cpp uses long double so that
// finite differences with very small time steps stay above rounding noise.

#include "gerstner/errors.hpp"
#include "gerstner/params.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>

namespace gerstner::detail {

template <std::floating_point T>
struct Pair {
  T first;
  T second;
};

template <std::floating_point T>
struct Partials {
  T xa, xb, za, zb;
  T det() const { return xa * zb - xb * za; }
};

template <std::floating_point T>
class FlowMap {
public:
  explicit FlowMap(const WaveParameters& p)
      : k_(static_cast<T>(p.k)), m_(static_cast<T>(p.m)),
        c_(static_cast<T>(p.c)), current_(static_cast<T>(p.U)),
        b0_(static_cast<T>(p.b0)) {}

  T k() const { return k_; }
  T m() const { return m_; }
  T c() const { return c_; }
  T current() const { return current_; }
  T b0() const { return b0_; }

  T phase(T t, T a) const { return k_ * (a - m_ * t); }
  T decay(T b) const { return std::exp(k_ * b); }

  Pair<T> position(T t, T a, T b) const {
    const T r = decay(b) / k_;
    const T th = phase(t, a);
    return {a + current_ * t - r * std::sin(th), b + r * std::cos(th)};
  }

  Pair<T> velocity(T t, T a, T b) const {
    const T e = decay(b);
    const T th = phase(t, a);
    return {current_ + m_ * e * std::cos(th), m_ * e * std::sin(th)};
  }

  /// Velocity minus the uniform current (U, 0).
  Pair<T> wave_velocity(T t, T a, T b) const {
    const T e = decay(b);
    const T th = phase(t, a);
    return {m_ * e * std::cos(th), m_ * e * std::sin(th)};
  }

  Pair<T> acceleration(T t, T a, T b) const {
    const T e = decay(b);
    const T th = phase(t, a);
    const T s = k_ * m_ * m_ * e;
    return {s * std::sin(th), -s * std::cos(th)};
  }

  Partials<T> partials(T t, T a, T b) const {
    const T e = decay(b);
    const T th = phase(t, a);
    const T sn = std::sin(th);
    const T cs = std::cos(th);
    const T half = std::sin(th / 2);
    // 1 - e cos(th), written to stay accurate where both terms approach 1.
    const T xa = -std::expm1(k_ * b) + 2 * e * half * half;
    return {xa, -e * sn, -e * sn, 1 + e * cs};
  }

  /// Solves X(t, a, b) = x for a. X is strictly increasing in a for b < 0
  /// and the root lies within e^{kb}/k of x - U t, so a safeguarded Newton
  /// iteration on that bracket always converges.
  T invert_x(T t, T x, T b, int max_iter = 60) const {
    const T r = decay(b) / k_;
    const T center = x - current_ * t;
    T lo = center - r;
    T hi = center + r;
    const T tol = tolerance(x);

    auto f = [&](T a) { return a + current_ * t - r * std::sin(phase(t, a)) - x; };

    T a = center;
    T best = a;
    T best_res = std::numeric_limits<T>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      const T fa = f(a);
      if (std::abs(fa) < best_res) {
        best_res = std::abs(fa);
        best = a;
      }
      const T slope = partials(t, a, b).xa;
      if (std::abs(fa) <= tol) {
        if (slope > 0) {
          const T polished = a - fa / slope;
          if (polished >= lo && polished <= hi) return polished;
        }
        return a;
      }
      if (fa < 0) {
        lo = a;
      } else {
        hi = a;
      }
      T next = a - fa / slope;
      if (!(slope > 0) || !(next > lo && next < hi)) {
        next = lo + (hi - lo) / 2;
      }
      if (next == a) return a;
      a = next;
    }
    throw NumericError("invert_x did not converge", static_cast<double>(best),
                       static_cast<double>(b), static_cast<double>(best_res));
  }

  /// eta(t, x): height of the surface particle b = b0 whose abscissa is x.
  T surface(T t, T x) const {
    const T a = invert_x(t, x, b0_);
    return position(t, a, b0_).second;
  }

  /// Label (a, b) of the point (x, z), which must lie strictly below the
  /// surface. Newton on both coordinates first; if that stalls (det -> 0
  /// near a b0 = 0 surface) the depth is bracketed and solved in b alone,
  /// using that Z(t, X^{-1}(t, x, b), b) is increasing in b.
  Pair<T> invert_map(T t, T x, T z) const {
    if (auto label = newton_2d(t, x, z)) return *label;
    return bracket_depth(t, x, z);
  }

private:
  static T tolerance(T scale) {
    return T(450) * std::numeric_limits<T>::epsilon() *
           std::max(T(1), std::abs(scale));
  }

  std::optional<Pair<T>> newton_2d(T t, T x, T z) const {
    T a = x - current_ * t;
    T b = std::min(z, b0_);
    const T tol = tolerance(std::max(std::abs(x), std::abs(z)));
    for (int it = 0; it < 40; ++it) {
      const Pair<T> pos = position(t, a, b);
      const T fx = pos.first - x;
      const T fz = pos.second - z;
      const Partials<T> J = partials(t, a, b);
      const T det = J.det();
      if (!(det > T(1e-6))) return std::nullopt;
      const T da = (J.zb * fx - J.xb * fz) / det;
      const T db = (-J.za * fx + J.xa * fz) / det;
      const bool converged = std::max(std::abs(fx), std::abs(fz)) <= tol;
      a -= da;
      b -= db;
      if (b > b0_) b = b0_;
      if (converged) {
        if (b < b0_) return Pair<T>{a, b};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  Pair<T> bracket_depth(T t, T x, T z) const {
    const T reach = decay(b0_) / k_;
    T lo = z - reach;
    T hi = b0_;
    const T tol = tolerance(z);
    auto h = [&](T b, T& a) {
      a = invert_x(t, x, b);
      return position(t, a, b).second - z;
    };

    T b = std::clamp(z, lo, hi);
    T a = 0;
    T best_b = b;
    T best_res = std::numeric_limits<T>::infinity();
    for (int it = 0; it < 200; ++it) {
      const T hb = h(b, a);
      if (std::abs(hb) < best_res) {
        best_res = std::abs(hb);
        best_b = b;
      }
      if (std::abs(hb) <= tol) return {a, b};
      if (hb < 0) {
        lo = b;
      } else {
        hi = b;
      }
      // dZ/db along fixed x equals det / X_a.
      const Partials<T> J = partials(t, a, b);
      const T slope = J.xa > 0 ? J.det() / J.xa : T(0);
      T next = b - hb / slope;
      if (!(slope > 0) || !(next > lo && next < hi)) {
        next = lo + (hi - lo) / 2;
      }
      if (next == b) return {a, b};
      b = next;
    }
    throw NumericError("invert_map did not converge", static_cast<double>(a),
                       static_cast<double>(best_b), static_cast<double>(best_res));
  }

  T k_, m_, c_, current_, b0_;
};

} // namespace gerstner::detail
