#include <doctest.h>

#include "gerstner/errors.hpp"
#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace gerstner;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const PhysicalConstants kFlat = PhysicalConstants::without_rotation();
const PhysicalConstants kEarth{};

WaveParameters gerstner_wave() { return resolve_classical(kFlat, 1.0, +1, 0.0); }

// Mixed bag of parameter sets used by the property checks.
std::vector<WaveParameters> parameter_sets() {
  const RegimeConstants rc = regime_constants(kEarth, 1.0);
  return {
      resolve_classical(kFlat, 1.0, +1, 0.0),
      resolve_classical(kFlat, 2.0, -1, 1.5),
      resolve_classical(kFlat, 0.5, +1, -3.0, -0.2),
      resolve_geophysical_from_m(kEarth, 1.0, rc.m1),
      resolve_geophysical_from_m(kEarth, 1.0, -std::sqrt(9.8)),
      resolve_geophysical_from_current(kEarth, 1.5, 2.0, Branch::Upper, -0.1),
  };
}

} // namespace

TEST_CASE("position") {
  const WaveParameters p = gerstner_wave();
  SUBCASE("crest particle at t = 0") {
    const Position x = position(p, 0.0, {0.0, 0.0});
    CHECK(x.x == 0.0);
    CHECK(x.z == 1.0);
  }
  SUBCASE("trough particle at t = 0") {
    const Position x = position(p, 0.0, {kPi, 0.0});
    CHECK(x.x == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(x.z == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("deep particles barely move") {
    const double bound = std::exp(-50.0);
    for (double t : {0.0, 0.7, 13.0}) {
      const Position x = position(p, t, {0.0, -50.0});
      CHECK(std::abs(x.x - (0.0 + p.U * t)) <= bound);
      CHECK(std::abs(x.z + 50.0) <= bound + kEps * 50.0);
    }
  }
  SUBCASE("labels above the surface are rejected") {
    CHECK_THROWS_AS(position(p, 0.0, {0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(velocity(p, 0.0, {0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(acceleration(p, 0.0, {0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(jacobian(p, 0.0, {0.0, 0.1}), DomainError);
  }
}

TEST_CASE("velocity") {
  SUBCASE("m = 0 moves everything with the wave speed") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0);
    for (double b : {0.0, -1.0, -4.0}) {
      const Velocity v = velocity(p, 3.0, {1.0, b});
      CHECK(v.u == p.c);
      CHECK(v.w == 0.0);
    }
  }
  SUBCASE("crest of the Gerstner wave") {
    const Velocity v = velocity(gerstner_wave(), 0.0, {0.0, 0.0});
    CHECK(v.u == std::sqrt(9.8));
    CHECK(v.w == 0.0);
  }
  SUBCASE("central differences of position") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double h = 1e-6;
    for (const WaveParameters& p : parameter_sets()) {
      if (std::abs(p.c) > 100.0) continue;
      for (int i = 0; i < 100; ++i) {
        const ParticleLabel l{2 * kPi * unit(rng), p.b0 - 3.0 * unit(rng)};
        const double t = 5.0 * unit(rng);
        const Position fwd = position(p, t + h, l);
        const Position bwd = position(p, t - h, l);
        const Velocity v = velocity(p, t, l);
        CHECK(std::abs((fwd.x - bwd.x) / (2 * h) - v.u) <= 1e-8);
        CHECK(std::abs((fwd.z - bwd.z) / (2 * h) - v.w) <= 1e-8);
      }
    }
  }
  SUBCASE("far field") {
    for (const WaveParameters& p : parameter_sets()) {
      for (double b : {-3.0, -8.0}) {
        for (double t : {0.0, 1.3}) {
          const Velocity v = velocity(p, t, {0.4, b});
          const double bound = std::abs(p.m) * std::exp(p.k * b) * (1 + 4 * kEps);
          CHECK(std::abs(v.u - p.U) <= bound + kEps * std::abs(p.U));
          CHECK(std::abs(v.w) <= bound);
        }
      }
    }
  }
}

TEST_CASE("acceleration") {
  SUBCASE("m = 0") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0);
    const Acceleration a = acceleration(p, 2.0, {0.3, -0.5});
    CHECK(a.ax == 0.0);
    CHECK(a.az == 0.0);
  }
  SUBCASE("deep particles") {
    const WaveParameters p = gerstner_wave();
    const Acceleration a = acceleration(p, 2.0, {0.3, -40.0});
    const double bound = p.k * p.m * p.m * std::exp(-40.0);
    CHECK(std::abs(a.ax) <= bound);
    CHECK(std::abs(a.az) <= bound);
  }
  SUBCASE("second-order agreement with differenced velocity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const WaveParameters& p : parameter_sets()) {
      for (int i = 0; i < 20; ++i) {
        const ParticleLabel l{2 * kPi * unit(rng), p.b0 - 2.0 * unit(rng)};
        const double t = 5.0 * unit(rng);
        const Acceleration exact = acceleration(p, t, l);
        auto error = [&](double h) {
          const Velocity f = velocity(p, t + h, l);
          const Velocity b = velocity(p, t - h, l);
          return std::hypot((f.u - b.u) / (2 * h) - exact.ax, (f.w - b.w) / (2 * h) - exact.az);
        };
        const double e1 = error(1e-3);
        const double e2 = error(5e-4);
        const double scale = std::pow(p.k, 3) * std::pow(p.m, 4) * std::exp(p.k * l.b);
        // truncation term h^2/6 |d^3 u/dt^3|
        CHECK(e1 <= scale * 1e-6 / 6 * 1.01 + 1e-10);
        if (e1 > 1e-9) {
          CHECK(std::log2(e1 / e2) >= 1.9);
        }
      }
    }
  }
}

TEST_CASE("jacobian") {
  SUBCASE("surface labels with b = 0") {
    const WaveParameters p = gerstner_wave();
    for (double a : {0.0, 0.5, 2.0, kPi}) {
      CHECK(std::abs(jacobian(p, 0.3, {a, 0.0}).det) <= 4 * kEps);
    }
  }
  SUBCASE("k = 1, b = -1") {
    const JacobianSample J = jacobian(gerstner_wave(), 0.4, {1.1, -1.0});
    CHECK(J.det == doctest::Approx(0.86466471676338731).epsilon(1e-15));
    CHECK(J.det == J.xa * J.zb - J.xb * J.za);
  }
  SUBCASE("independent of t and a") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const WaveParameters& p : parameter_sets()) {
      for (double b : {p.b0, -0.3 + p.b0, -2.0}) {
        const double expected = -std::expm1(2 * p.k * b);
        for (int i = 0; i < 100; ++i) {
          const double det = jacobian(p, 50 * unit(rng), {50 * unit(rng), b}).det;
          CHECK(std::abs(det - expected) <= 1e-15);
        }
      }
    }
  }
}

TEST_CASE("invert_x") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SUBCASE("deep labels are a shift") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 1.0);
    for (double t : {0.0, 2.5}) {
      const double X = 0.75;
      const double a = invert_x(p, t, X, -50.0);
      CHECK(std::abs(a - (X - p.U * t)) <= std::exp(-50.0) + 4 * kEps * (std::abs(X) + p.U * t));
    }
  }
  SUBCASE("round trip") {
    for (const WaveParameters& p : parameter_sets()) {
      for (int i = 0; i < 1000 / 6 + 1; ++i) {
        const double a = 20 * unit(rng) - 10;
        const double b = std::min(p.b0, -1e-3) - 3 * unit(rng);
        const double t = 10 * unit(rng);
        const double X = position(p, t, {a, b}).x;
        CHECK(std::abs(invert_x(p, t, X, b) - a) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
  SUBCASE("one wavelength shift") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.0, -0.5);
    for (double X : {-1.0, 0.2, 3.0}) {
      const double a0 = invert_x(p, 0.0, X, p.b0);
      const double a1 = invert_x(p, 0.0, X + 2 * kPi, p.b0);
      CHECK(std::abs(a1 - a0 - 2 * kPi) <= 1e-13);
    }
  }
  SUBCASE("cusped surface still inverts") {
    const WaveParameters p = gerstner_wave();
    for (double a : {0.0, 1e-9, 0.5, 3.0}) {
      const double X = position(p, 0.0, {a, 0.0}).x;
      const double back = invert_x(p, 0.0, X, 0.0);
      CHECK(std::abs(position(p, 0.0, {back, 0.0}).x - X) <= 1e-13);
    }
  }
}

TEST_CASE("invert_map") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SUBCASE("round trip") {
    for (const WaveParameters& p : parameter_sets()) {
      for (int i = 0; i < 200; ++i) {
        const double a = 2 * kPi * unit(rng);
        const double b = std::min(p.b0, 0.0) - 0.01 - 3 * unit(rng);
        const double t = 10 * unit(rng);
        const Position x = position(p, t, {a, b});
        const ParticleLabel l = invert_map(p, t, x.x, x.z);
        const double wrap = std::remainder(l.a - a, 2 * kPi / p.k);
        CHECK(std::abs(wrap) <= 1e-10);
        CHECK(std::abs(l.b - b) <= 1e-10);
      }
    }
  }
  SUBCASE("asymptotically the identity") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, -1, 2.0);
    const ParticleLabel l = invert_map(p, 1.5, 0.3, -60.0);
    CHECK(std::abs(l.b + 60.0) <= 1e-12);
    CHECK(std::abs(l.a - (0.3 - p.U * 1.5)) <= 1e-12);
  }
  SUBCASE("recovered depth increases with Z") {
    for (const WaveParameters& p : parameter_sets()) {
      const double X = 0.9;
      const double eta = surface_profile(p, 0.0, X);
      double previous = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < 50; ++j) {
        const double Z = eta - 3.0 + 2.99 * j / 49.0;
        const double b = invert_map(p, 0.0, X, Z).b;
        CHECK(b > previous);
        previous = b;
      }
    }
  }
  SUBCASE("points on or above the surface are rejected") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.0, -0.5);
    const double eta = surface_profile(p, 0.0, 1.0);
    CHECK_THROWS_AS(invert_map(p, 0.0, 1.0, eta), OutOfDomainError);
    CHECK_THROWS_AS(invert_map(p, 0.0, 1.0, eta + 1.0), OutOfDomainError);
  }
}

TEST_CASE("surface") {
  SUBCASE("crest to trough height") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.0, -1.0);
    double lo = 1e9, hi = -1e9;
    for (const SurfacePoint& s : sample_surface(p, 0.0, 4096)) {
      lo = std::min(lo, s.eta);
      hi = std::max(hi, s.eta);
    }
    CHECK(hi - lo == doctest::Approx(0.73575888234288464).epsilon(1e-12));
  }
  SUBCASE("travelling wave and periodicity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const WaveParameters& p : parameter_sets()) {
      if (p.b0 == 0.0) continue;
      for (int i = 0; i < 100; ++i) {
        const double t = 5 * unit(rng);
        const double X = 10 * unit(rng) - 5;
        CHECK(std::abs(surface_profile(p, t, X) - surface_profile(p, 0.0, X - p.c * t)) <= 1e-10);
        CHECK(std::abs(surface_profile(p, 0.0, X + 2 * kPi / p.k) - surface_profile(p, 0.0, X)) <=
              1e-12);
      }
    }
  }
  SUBCASE("cusped crests are sampled exactly") {
    const WaveParameters p = gerstner_wave();
    const auto pts = sample_surface(p, 0.0, 8);
    CHECK(pts.front().x == 0.0);
    CHECK(pts.front().eta == 1.0);
    CHECK(surface_profile(p, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sample_trajectory") {
  SUBCASE("one period advances by the drift") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, std::sqrt(9.8));
    const double T = 2 * kPi / (p.k * std::abs(p.m));
    const auto s = sample_trajectory(p, {0.2, -0.7}, 1.0, 1.0 + T, 33);
    CHECK(s.size() == 33);
    CHECK(s.back().t == 1.0 + T);
    CHECK(std::abs(s.back().state.x - s.front().state.x - 2 * kPi) <= 1e-12);
    CHECK(std::abs(s.back().state.z - s.front().state.z) <= 1e-12);
  }
  SUBCASE("m = 0 gives horizontal motion at speed c") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0);
    const auto s = sample_trajectory(p, {0.0, -1.0}, 0.0, 1e-3, 11);
    for (const TrajectorySample& r : s) {
      CHECK(r.state.z == s.front().state.z);
      CHECK(std::abs(r.state.x - p.c * r.t) <= 1e-12 * std::max(1.0, p.c * r.t));
    }
  }
  SUBCASE("no current, no rotation: circles about the label") {
    const WaveParameters p = gerstner_wave();
    for (double b : {0.0, -0.8, -2.5}) {
      const double r = std::exp(b);
      for (const TrajectorySample& s : sample_trajectory(p, {0.5, b}, 0.0, 5.0, 101)) {
        CHECK(std::abs(std::hypot(s.state.x - 0.5, s.state.z - b) - r) <= 1e-12);
      }
    }
  }
  SUBCASE("argument checks") {
    const WaveParameters p = gerstner_wave();
    CHECK_THROWS_AS(sample_trajectory(p, {0.0, -1.0}, 0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(sample_trajectory(p, {0.0, -1.0}, 1.0, 1.0, 5), DomainError);
  }
}

TEST_CASE("map properties") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const WaveParameters& p : parameter_sets()) {
    const double L = 2 * kPi / p.k;
    for (int i = 0; i < 100; ++i) {
      const double t = 5 * unit(rng), a = 10 * unit(rng), b = p.b0 - 2 * unit(rng);
      const Position x = position(p, t, {a, b});
      const Position shifted = position(p, t, {a + L, b});
      CHECK(std::abs(shifted.x - x.x - L) <= 1e-12 * std::max(1.0, std::abs(x.x)));
      CHECK(std::abs(shifted.z - x.z) <= 1e-12);
      // X(t,a,b) - c t = X(0, a - m t, b)
      const Position moved = position(p, 0.0, {a - p.m * t, b});
      CHECK(std::abs(x.x - p.c * t - moved.x) <= 1e-12 * std::max(1.0, std::abs(p.c * t)));
      CHECK(std::abs(x.z - moved.z) <= 1e-12);
    }
  }

  SUBCASE("injectivity on a label grid") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.5, -0.01);
    std::vector<Position> pts;
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        pts.push_back(position(p, 0.3, {i * 0.157, p.b0 - j * 0.05}));
      }
    }
    std::size_t collisions = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (std::hypot(pts[i].x - pts[j].x, pts[i].z - pts[j].z) <= 1e-9) ++collisions;
      }
    }
    CHECK(collisions == 0);
  }
}
