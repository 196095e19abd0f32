#include "gerstner/kinematics.hpp"

#include "gerstner/detail/flow_map.hpp"
#include "gerstner/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gerstner {

namespace {

using Map = detail::FlowMap<double>;

void require_label(const WaveParameters& p, double b) {
  if (!(b <= p.b0)) {
    throw DomainError("label depth b = " + std::to_string(b) +
                      " lies above the surface label b0 = " + std::to_string(p.b0));
  }
}

} // namespace

Position position(const WaveParameters& params, double t, ParticleLabel label) {
  require_label(params, label.b);
  const auto [x, z] = Map(params).position(t, label.a, label.b);
  return {x, z};
}

Velocity velocity(const WaveParameters& params, double t, ParticleLabel label) {
  require_label(params, label.b);
  const auto [u, w] = Map(params).velocity(t, label.a, label.b);
  return {u, w};
}

Acceleration acceleration(const WaveParameters& params, double t,
                          ParticleLabel label) {
  require_label(params, label.b);
  const auto [ax, az] = Map(params).acceleration(t, label.a, label.b);
  return {ax, az};
}

KinematicState kinematic_state(const WaveParameters& params, double t,
                               ParticleLabel label) {
  require_label(params, label.b);
  const Map map(params);
  const auto pos = map.position(t, label.a, label.b);
  const auto vel = map.velocity(t, label.a, label.b);
  const auto acc = map.acceleration(t, label.a, label.b);
  return {pos.first, pos.second, vel.first, vel.second, acc.first, acc.second};
}

JacobianSample jacobian(const WaveParameters& params, double t,
                        ParticleLabel label) {
  require_label(params, label.b);
  const auto J = Map(params).partials(t, label.a, label.b);
  return {J.xa, J.xb, J.za, J.zb, J.det()};
}

double invert_x(const WaveParameters& params, double t, double X, double b) {
  require_label(params, b);
  return Map(params).invert_x(t, X, b);
}

ParticleLabel invert_map(const WaveParameters& params, double t, double X,
                         double Z) {
  const Map map(params);
  const double eta = map.surface(t, X);
  if (!(Z < eta)) {
    throw OutOfDomainError("point (" + std::to_string(X) + ", " +
                           std::to_string(Z) + ") is not below the surface");
  }
  const auto [a, b] = map.invert_map(t, X, Z);
  return {a, b};
}

double surface_profile(const WaveParameters& params, double t, double X) {
  return Map(params).surface(t, X);
}

std::vector<SurfacePoint> sample_surface(const WaveParameters& params, double t,
                                         std::size_t n, double a_start) {
  if (n == 0) return {};
  const Map map(params);
  const double wavelength = 2.0 * std::numbers::pi / params.k;
  std::vector<SurfacePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = a_start + wavelength * static_cast<double>(i) / static_cast<double>(n);
    const auto [x, z] = map.position(t, a, params.b0);
    out.push_back({t, x, z});
  }
  return out;
}

std::vector<TrajectorySample> sample_trajectory(const WaveParameters& params,
                                                ParticleLabel label, double t0,
                                                double t1, std::size_t n) {
  if (n < 2) throw DomainError("sample_trajectory needs at least two samples");
  if (!(t0 < t1)) throw DomainError("sample_trajectory needs t0 < t1");
  require_label(params, label.b);

  std::vector<TrajectorySample> out;
  out.reserve(n);
  const double span = t1 - t0;
  for (std::size_t i = 0; i < n; ++i) {
    // last sample is exactly t1
    const double t = i + 1 == n ? t1
                                : t0 + span * static_cast<double>(i) /
                                           static_cast<double>(n - 1);
    out.push_back({t, label, kinematic_state(params, t, label)});
  }
  return out;
}

} // namespace gerstner
