#include "gerstner/analysis.hpp"

#include "gerstner/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gerstner {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_wave(const WaveParameters& p, const char* what) {
  if (p.m == 0.0) {
    throw UndefinedError(std::string(what) +
                         " is undefined for m = 0: particles never leave their crest line");
  }
}

double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Golden-section search for the minimum of f on [lo, hi].
template <typename F>
double golden_minimum(F&& f, double lo, double hi, double& at) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                             std::max(1.0, std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 < f2) {
    at = x1;
    return f1;
  }
  at = x2;
  return f2;
}

} // namespace

const char* to_string(PathKind kind) {
  switch (kind) {
  case PathKind::Circle: return "Circle";
  case PathKind::HorizontalLine: return "HorizontalLine";
  case PathKind::Trochoid: return "Trochoid";
  case PathKind::ReflectedTrochoid: return "ReflectedTrochoid";
  }
  return "?";
}

const char* to_string(TrochoidType type) {
  switch (type) {
  case TrochoidType::Curtate: return "Curtate";
  case TrochoidType::Cuspidal: return "Cuspidal";
  case TrochoidType::Prolate: return "Prolate";
  }
  return "?";
}

const char* to_string(Orientation orientation) {
  return orientation == Orientation::Clockwise ? "Clockwise" : "Counterclockwise";
}

const char* to_string(CurrentDirection direction) {
  switch (direction) {
  case CurrentDirection::Favorable: return "Favorable";
  case CurrentDirection::Adverse: return "Adverse";
  case CurrentDirection::NoCurrent: return "NoCurrent";
  case CurrentDirection::NoWave: return "NoWave";
  }
  return "?";
}

double drift(const WaveParameters& params) {
  require_wave(params, "drift");
  return kTwoPi * params.U / (params.k * std::abs(params.m));
}

double orbit_period(const WaveParameters& params) {
  require_wave(params, "orbit period");
  return kTwoPi / (params.k * std::abs(params.m));
}

bool stagnation_check(const WaveParameters& params) { return params.m == 0.0; }

CurrentDirection current_direction(const WaveParameters& params) {
  if (has_zero_speed(params)) return CurrentDirection::NoWave;
  if (has_zero_current(params)) return CurrentDirection::NoCurrent;
  return (params.c > 0.0) == (params.U > 0.0) ? CurrentDirection::Favorable
                                              : CurrentDirection::Adverse;
}

CurrentDirection current_direction_from_m(const PhysicalConstants& constants,
                                          double k, double m) {
  const RegimeConstants rc = regime_constants(constants, k);
  const double root = std::sqrt(constants.g / k);
  if (m == rc.m1 || m == rc.m2) return CurrentDirection::NoCurrent;
  if (m == root || m == -root) return CurrentDirection::NoWave;
  const bool favorable = m < rc.m1 || (m > -root && m < rc.m2) || m > root;
  return favorable ? CurrentDirection::Favorable : CurrentDirection::Adverse;
}

std::optional<double> critical_depth(const WaveParameters& params) {
  if (params.m == 0.0 || has_zero_current(params)) return std::nullopt;
  return std::log(std::abs(params.U) / std::abs(params.m)) / params.k;
}

Classification classify_trajectory(const WaveParameters& params, double b) {
  if (!(b <= params.b0)) {
    throw DomainError("classify_trajectory: label depth above the surface");
  }
  Classification out;
  out.geometry.point_distance = std::exp(params.k * b) / params.k;

  if (params.m == 0.0) {
    out.geometry.rolling_radius = std::numeric_limits<double>::infinity();
    out.cls.kind = PathKind::HorizontalLine;
    return out;
  }

  const bool still = has_zero_current(params);
  out.geometry.rolling_radius =
      still ? 0.0 : std::abs(params.U) / (params.k * std::abs(params.m));
  if (still) {
    out.cls.kind = PathKind::Circle;
    out.cls.orientation =
        params.m > 0.0 ? Orientation::Clockwise : Orientation::Counterclockwise;
    return out;
  }

  out.cls.kind = params.U * sign(params.m) > 0.0 ? PathKind::Trochoid
                                                 : PathKind::ReflectedTrochoid;
  const double threshold = *critical_depth(params);
  out.geometry.critical_depth = threshold;
  const double gap = b - threshold;
  if (gap > 0.0) {
    out.cls.subtype = TrochoidType::Prolate;
  } else if (gap < 0.0) {
    out.cls.subtype = TrochoidType::Curtate;
  } else {
    out.cls.subtype = TrochoidType::Cuspidal;
  }
  return out;
}

std::optional<TrajectoryClass> classify_oracle(const WaveParameters& params,
                                               double b,
                                               const OracleOptions& options) {
  if (!(b <= params.b0)) {
    throw DomainError("classify_oracle: label depth above the surface");
  }
  const ParticleLabel label{0.0, b};
  const std::size_t n = std::max<std::size_t>(options.samples, 16);

  if (params.m == 0.0) {
    const double span = kTwoPi / (params.k * std::max(std::abs(params.c), 1.0));
    const double z0 = position(params, 0.0, label).z;
    double prev_x = position(params, 0.0, label).x;
    const double dir = sign(params.c);
    for (std::size_t i = 1; i <= n; ++i) {
      const Position p = position(params, span * static_cast<double>(i) / n, label);
      if (std::abs(p.z - z0) > options.tolerance / params.k) return std::nullopt;
      if (dir * (p.x - prev_x) <= 0.0) return std::nullopt;
      prev_x = p.x;
    }
    return TrajectoryClass{PathKind::HorizontalLine, std::nullopt, std::nullopt};
  }

  // One orbit, closed sample set (first and last sample one period apart).
  const double period = orbit_period(params);
  std::vector<Position> pts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    pts[i] = position(params, period * static_cast<double>(i) / static_cast<double>(n), label);
  }

  double z_mean = 0.0;
  double x_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    z_mean += pts[i].z;
    x_mean += pts[i].x;
  }
  z_mean /= static_cast<double>(n);
  x_mean /= static_cast<double>(n);
  double excursion = 0.0;
  for (const Position& p : pts) excursion = std::max(excursion, std::abs(p.z - z_mean));
  if (!(excursion > 0.0)) return std::nullopt;

  const double displacement = pts[n].x - pts[0].x;
  const double closure = std::abs(displacement) / excursion;

  if (closure <= options.closure_tolerance) {
    double d_min = std::numeric_limits<double>::infinity();
    double d_max = 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::hypot(pts[i].x - x_mean, pts[i].z - z_mean);
      d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
      const double x0 = pts[i].x - x_mean, z0 = pts[i].z - z_mean;
      const double x1 = pts[i + 1].x - x_mean, z1 = pts[i + 1].z - z_mean;
      area += x0 * z1 - x1 * z0;
    }
    if (d_max - d_min > options.tolerance * d_max) return std::nullopt;
    return TrajectoryClass{PathKind::Circle, std::nullopt,
                           area < 0.0 ? Orientation::Clockwise
                                      : Orientation::Counterclockwise};
  }
  if (closure < options.tolerance) return std::nullopt;

  // Forward speed along the drift direction; its minimum decides the
  // subtype, and where it occurs (bottom or top of the orbit) decides
  // whether the trochoid is reflected.
  const double dir = sign(displacement);
  auto forward = [&](double t) { return dir * velocity(params, t, label).u; };
  std::size_t i_min = 0;
  double f_grid = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double f = forward(period * static_cast<double>(i) / static_cast<double>(n));
    if (f < f_grid) {
      f_grid = f;
      i_min = i;
    }
  }
  const double dt = period / static_cast<double>(n);
  const double t_center = period * static_cast<double>(i_min) / static_cast<double>(n);
  double t_min = t_center;
  const double f_min = golden_minimum(forward, t_center - dt, t_center + dt, t_min);

  const double mean_speed = std::abs(displacement) / period;
  const double q = f_min / mean_speed;
  const double z_at_min = position(params, t_min, label).z;
  const double height = (z_at_min - z_mean) / excursion;
  if (std::abs(height) < 0.5) return std::nullopt;
  const PathKind kind = height < 0.0 ? PathKind::Trochoid : PathKind::ReflectedTrochoid;

  if (q < -options.tolerance) return TrajectoryClass{kind, TrochoidType::Prolate, std::nullopt};
  if (q > options.tolerance) return TrajectoryClass{kind, TrochoidType::Curtate, std::nullopt};
  const Velocity v = velocity(params, t_min, label);
  const double speed = std::hypot(v.u, v.w) / mean_speed;
  if (std::abs(q) <= options.tie_tolerance && speed <= options.tie_tolerance) {
    return TrajectoryClass{kind, TrochoidType::Cuspidal, std::nullopt};
  }
  return std::nullopt;
}

Position reparametrize_tau(const WaveParameters& params, ParticleLabel label,
                           double tau) {
  require_wave(params, "the rescaled time");
  const double s = sign(params.m);
  const double k = params.k;
  const double r = std::exp(k * label.b) / k;
  const double x = label.a * params.c / params.m + params.U / (k * params.m * s) * tau +
                   r * std::sin(s * tau);
  const double z = label.b + r * std::cos(tau);
  return {x, z};
}

double time_from_tau(const WaveParameters& params, ParticleLabel label,
                     double tau) {
  require_wave(params, "the rescaled time");
  return (sign(params.m) * tau / params.k + label.a) / params.m;
}

} // namespace gerstner
