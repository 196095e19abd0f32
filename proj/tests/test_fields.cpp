#include <doctest.h>

#include "gerstner/errors.hpp"
#include "gerstner/fields.hpp"
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
const PhysicalConstants kFlat = PhysicalConstants::without_rotation();
const PhysicalConstants kEarth{};

WaveParameters gerstner_wave() { return resolve_classical(kFlat, 1.0, +1, 0.0); }

std::vector<WaveParameters> moderate_sets() {
  const RegimeConstants rc = regime_constants(kEarth, 1.0);
  return {
      resolve_classical(kFlat, 1.0, +1, 0.0),
      resolve_classical(kFlat, 2.0, -1, 1.5, -0.1),
      resolve_geophysical_from_m(kEarth, 1.0, rc.m2),
      resolve_geophysical_from_m(kEarth, 1.0, -std::sqrt(9.8)),
      resolve_geophysical_from_current(kEarth, 0.5, -2.0, Branch::Lower),
  };
}

// Interior point a safe distance below the surface.
std::pair<double, double> interior_point(const WaveParameters& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double X = 2 * kPi / p.k * unit(rng);
  const double trough = p.b0 - std::exp(p.k * p.b0) / p.k;
  const double Z = trough - (0.2 + 2.0 * unit(rng)) / p.k;
  return {X, Z};
}

} // namespace

TEST_CASE("pressure") {
  SUBCASE("equals P0 on the surface") {
    for (const WaveParameters& p : moderate_sets()) {
      CHECK(pressure(p, p.b0) == p.constants.p0);
    }
  }
  SUBCASE("classical value one metre down") {
    // integrated dP/db and closed form agree on 5563.1428878594022 Pa
    const WaveParameters p = gerstner_wave();
    CHECK(pressure(p, -1.0) - p.constants.p0 ==
          doctest::Approx(5563.1428878594022).epsilon(1e-13));
  }
  SUBCASE("affine growth at depth") {
    for (const WaveParameters& p : moderate_sets()) {
      const double slope = pressure(p, -41.0) - pressure(p, -40.0);
      const double expected = (p.constants.g - 2 * p.constants.omega * p.U) * p.constants.rho;
      CHECK(slope == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("gradient matches a difference quotient") {
    const WaveParameters p = moderate_sets()[2];
    for (double b : {-0.1, -1.0, -3.0}) {
      const double h = 1e-5;
      const double fd = (pressure(p, b + h) - pressure(p, b - h)) / (2 * h);
      CHECK(fd == doctest::Approx(pressure_gradient_b(p, b)).epsilon(1e-7));
    }
  }
  SUBCASE("rejects labels above the surface") {
    CHECK_THROWS_AS(pressure(gerstner_wave(), 0.5), DomainError);
  }
}

TEST_CASE("vorticity") {
  SUBCASE("irrotational when m = 0") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0);
    for (double b : {-0.1, -1.0, 0.0}) CHECK(vorticity(p, b) == 0.0);
  }
  SUBCASE("k = 1, m = 1, b = -1") {
    WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 1.0);
    CHECK(vorticity(p, -1.0) == doctest::Approx(-0.3130352854993313).epsilon(1e-15));
  }
  SUBCASE("decay bound") {
    const WaveParameters p = gerstner_wave();
    const double b_ref = -0.5;
    for (double b : {-1.0, -5.0, -20.0}) {
      const double bound = 2 * p.k * std::abs(p.m) * std::exp(2 * p.k * b) /
                           (1 - std::exp(2 * p.k * b_ref));
      CHECK(std::abs(vorticity(p, b)) <= bound);
    }
    CHECK(std::abs(vorticity(p, -40.0)) < 1e-30);
  }
  SUBCASE("signed infinity on the level b = 0") {
    const WaveParameters p = gerstner_wave();
    try {
      (void)vorticity(p, 0.0);
      FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
      CHECK(e.signed_infinity() == -std::numeric_limits<double>::infinity());
    }
    const WaveParameters q = resolve_classical(kFlat, 1.0, -1, 0.0);
    try {
      (void)vorticity(q, 0.0);
      FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
      CHECK(e.signed_infinity() == std::numeric_limits<double>::infinity());
    }
  }
  SUBCASE("sign, monotonicity and proportionality to m") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const double m = (unit(rng) < 0.5 ? -1 : 1) * (0.01 + 5 * unit(rng));
      const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, m);
      const double b = -0.01 - 5 * unit(rng);
      const double g1 = vorticity(p, b);
      CHECK((g1 < 0) == (m > 0));
      CHECK(std::abs(vorticity(p, b + 0.005)) > std::abs(g1));
      const double per_m = -2 * std::exp(2 * b) / (1 - std::exp(2 * b));
      CHECK(g1 / m == doctest::Approx(per_m).epsilon(1e-12));
    }
  }
  SUBCASE("finite-difference curl converges to the closed form") {
    for (const WaveParameters& p : moderate_sets()) {
      std::mt19937_64 rng(22);
      for (int i = 0; i < 5; ++i) {
        const auto [X, Z] = interior_point(p, rng);
        const double b = invert_map(p, 0.3, X, Z).b;
        const double exact = vorticity(p, b);
        const double e1 = std::abs(vorticity_fd(p, 0.3, X, Z, 1e-3) - exact);
        const double e2 = std::abs(vorticity_fd(p, 0.3, X, Z, 5e-4) - exact);
        CHECK(e2 <= 1e-6);
        if (e1 > 1e-10) CHECK(std::log2(e1 / e2) >= 1.9);
      }
    }
  }
}

TEST_CASE("eulerian_state") {
  SUBCASE("far field approaches the current") {
    for (const WaveParameters& p : moderate_sets()) {
      const double Z = -12.0 / p.k;
      const EulerianSample s = eulerian_state(p, 0.7, 0.4, Z);
      const double bound = std::abs(p.m) * std::exp(p.k * Z + 1);
      CHECK(std::abs(s.u - p.U) <= bound);
      CHECK(std::abs(s.w) <= bound);
    }
  }
  SUBCASE("travelling wave identity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const WaveParameters& p : moderate_sets()) {
      for (int i = 0; i < 100; ++i) {
        const auto [X, Z] = interior_point(p, rng);
        const double t = 3 * unit(rng);
        const EulerianSample a = eulerian_state(p, t, X, Z);
        const EulerianSample b = eulerian_state(p, 0.0, X - p.c * t, Z);
        CHECK(std::abs(a.u - b.u) <= 1e-9);
        CHECK(std::abs(a.w - b.w) <= 1e-9);
        CHECK(std::abs(a.p - b.p) <= 1e-9 * p.constants.p0);
      }
    }
  }
  SUBCASE("surface pressure") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.5, -0.3);
    for (double a : {0.0, 1.0, 2.5}) {
      const Position x = position(p, 0.4, {a, p.b0});
      const EulerianSample s = eulerian_state(p, 0.4, x.x, x.z);
      CHECK(std::abs(s.p - p.constants.p0) <= 1e-9 * p.constants.p0);
      const EulerianSample below = eulerian_state(p, 0.4, x.x, x.z - 1e-9);
      CHECK(std::abs(below.p - p.constants.p0) <= 1e-9 * p.constants.p0);
    }
    CHECK_THROWS_AS(eulerian_state(p, 0.4, 0.0, 5.0), OutOfDomainError);
  }
  SUBCASE("pressure is constant along recovered isobars") {
    const WaveParameters p = moderate_sets()[1];
    const double b = -0.7;
    const double expected = pressure(p, b);
    for (double t : {0.0, 0.9}) {
      for (double a : {0.0, 0.4, 1.9}) {
        const Position x = position(p, t, {a, b});
        const EulerianSample s = eulerian_state(p, t, x.x, x.z);
        CHECK(std::abs(s.label.b - b) <= 1e-12);
        CHECK(std::abs(s.p - expected) <= 1e-8);
      }
    }
  }
}

TEST_CASE("euler_residual") {
  SUBCASE("classical Gerstner at h = 1e-4") {
    const WaveParameters p = gerstner_wave();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double b = -0.5 - 2 * unit(rng);
      const Position x = position(p, 0.0, {2 * kPi * unit(rng), b});
      const EulerResidual r = euler_residual(p, 0.0, x.x, x.z, 1e-4);
      CHECK(r.momentum_x <= 1e-6);
      CHECK(r.momentum_z <= 1e-6);
      CHECK(r.divergence <= 1e-6);
    }
  }
  SUBCASE("geophysical m = 0 is uniform flow") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0);
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20; ++i) {
      const auto [X, Z] = interior_point(p, rng);
      const EulerResidual r = euler_residual(p, 0.0, X, Z, 1e-3);
      CHECK(r.momentum_x <= 1e-12);
      CHECK(r.momentum_z <= 1e-12);
      CHECK(r.divergence <= 1e-12);
    }
  }
  SUBCASE("second-order divergence at random points") {
    std::mt19937_64 rng(33);
    for (const WaveParameters& p : moderate_sets()) {
      for (int i = 0; i < 20; ++i) {
        const auto [X, Z] = interior_point(p, rng);
        const double d1 = euler_residual(p, 0.0, X, Z, 1e-3).divergence;
        const double d2 = euler_residual(p, 0.0, X, Z, 5e-4).divergence;
        CHECK(d1 <= 1e-5);
        if (d1 > 1e-11) CHECK(std::log2(d1 / d2) >= 1.9);
      }
    }
  }
  SUBCASE("clearance is enforced") {
    const WaveParameters p = resolve_classical(kFlat, 1.0, +1, 0.0, -0.5);
    const double eta = surface_profile(p, 0.0, 1.0);
    CHECK_THROWS_AS(euler_residual(p, 0.0, 1.0, eta - 1e-3, 1e-3), DomainError);
    CHECK_NOTHROW(euler_residual(p, 0.0, 1.0, eta - 0.1, 1e-3));
    CHECK_THROWS_AS(euler_residual(p, 0.0, 1.0, -2.0, 0.0), DomainError);
  }
}

TEST_CASE("boundary residuals") {
  std::vector<double> labels(1000);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = 2 * kPi * (i + 0.5) / 1000;

  SUBCASE("dynamic condition is exact and kinematic condition holds") {
    for (const WaveParameters& p : moderate_sets()) {
      const BoundaryResiduals r = boundary_residuals(p, 0.37, labels);
      CHECK(r.dynamic_bc == 0.0);
      CHECK(r.kinematic_bc <= 1e-12);
      CHECK(r.evaluated + r.excluded_cusps == labels.size());
    }
  }
  SUBCASE("cusps are excluded") {
    const WaveParameters p = gerstner_wave();
    const std::vector<double> crest{0.0, 2 * kPi, 1.0};
    const BoundaryResiduals r = boundary_residuals(p, 0.0, crest);
    CHECK(r.excluded_cusps == 2);
    CHECK(r.evaluated == 1);
  }
  SUBCASE("m = 0") {
    const WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 0.0, -0.2);
    CHECK(boundary_residuals(p, 0.0, labels).kinematic_bc == 0.0);
  }
}

TEST_CASE("lagrangian pressure check") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SUBCASE("consistent parameters") {
    for (const WaveParameters& p : moderate_sets()) {
      for (int i = 0; i < 100; ++i) {
        const ParticleLabel l{2 * kPi * unit(rng), p.b0 - 3 * unit(rng)};
        const PressureCheck r = lagrangian_pressure_check(p, 5 * unit(rng), l);
        CHECK(r.r_pa <= 1e-10);
        CHECK(r.r_pb <= 1e-10);
      }
    }
  }
  SUBCASE("a perturbed wave speed is detected") {
    WaveParameters p = resolve_geophysical_from_m(kEarth, 1.0, 1.0);
    p.c += 1.0;
    p.U += 1.0;
    for (int i = 0; i < 20; ++i) {
      const ParticleLabel l{2 * kPi * unit(rng), -2 * unit(rng)};
      const double t = 3 * unit(rng);
      const double theta = p.k * (l.a - p.m * t);
      const double expected = p.constants.rho * std::exp(p.k * l.b) * 2 * p.constants.omega *
                              std::abs(std::sin(theta));
      CHECK(lagrangian_pressure_check(p, t, l).r_pa ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("grid verification") {
  const WaveParameters p = gerstner_wave();
  GridSpec grid = default_grid(p, 6, 6);

  SUBCASE("default grid keeps clear of the trough") {
    CHECK(grid.x_min == 0.0);
    CHECK(grid.x_max == doctest::Approx(2 * kPi));
    CHECK(grid.z_max == doctest::Approx(-1.2));
    CHECK(grid.z_min == doctest::Approx(-3.0));
  }
  SUBCASE("report is finite, non-negative and complete") {
    const ResidualReport r = verify_grid(p, grid, 1e-3, 200);
    for (double v : {r.momentum_x, r.momentum_z, r.divergence, r.dynamic_bc, r.kinematic_bc,
                     r.farfield}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
    CHECK(r.interior_samples == 36);
    CHECK(r.unresolved == 0);
    CHECK(r.dynamic_bc == 0.0);
    CHECK(r.h_t == time_step(p, 1e-3));
  }
  SUBCASE("residuals are invariant under the travelling shift") {
    const double s = 0.61;
    GridSpec moved = grid;
    moved.t += s;
    moved.x_min += p.c * s;
    moved.x_max += p.c * s;
    const ResidualReport a = verify_grid(p, grid, 1e-3, 200);
    const ResidualReport b = verify_grid(p, moved, 1e-3, 200);
    CHECK(std::abs(a.momentum_x - b.momentum_x) <= 1e-9);
    CHECK(std::abs(a.momentum_z - b.momentum_z) <= 1e-9);
    CHECK(std::abs(a.divergence - b.divergence) <= 1e-9);
    CHECK(std::abs(a.kinematic_bc - b.kinematic_bc) <= 1e-9);
    CHECK(std::abs(a.farfield - b.farfield) <= 1e-9);
  }
  SUBCASE("order study") {
    const OrderStudy study = order_study(p, grid, 1e-3, 3, 100);
    REQUIRE(study.reports.size() == 3);
    CHECK(study.reports[1].h == 5e-4);
    REQUIRE(study.order_momentum_x.size() == 2);
    for (double o : study.order_momentum_x) CHECK(o >= 1.9);
    for (double o : study.order_momentum_z) CHECK(o >= 1.9);
    for (double o : study.order_divergence) CHECK(o >= 1.9);
    CHECK(richardson_order(4.0, 1.0) == doctest::Approx(2.0));
  }
}
