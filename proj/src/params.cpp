#include "gerstner/params.hpp"

#include "gerstner/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gerstner {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_wave_number(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("wave number k must be positive and finite");
  }
}

void require_surface_label(double b0) {
  if (!(b0 <= 0.0)) {
    throw DomainError("surface label b0 must satisfy b0 <= 0");
  }
}

void require_positive_constants(const PhysicalConstants& pc) {
  if (!(pc.g > 0.0) || !(pc.rho > 0.0) || !(pc.omega >= 0.0)) {
    throw DomainError("physical constants require g > 0, rho > 0, omega >= 0");
  }
}

// k m^2 split as hi + lo with the rounding error of both products kept.
struct Split {
  double hi;
  double lo;
};

Split wave_term(double k, double m) {
  const double p = k * m;
  const double ep = std::fma(k, m, -p);
  const double q = p * m;
  const double eq = std::fma(p, m, -q);
  return {q, eq + ep * m};
}

// (g - k m^2) / (2 omega) with the subtraction done on the split product.
double speed_from_m(const PhysicalConstants& pc, double k, double m) {
  const Split km2 = wave_term(k, m);
  return ((pc.g - km2.hi) - km2.lo) / (2.0 * pc.omega);
}

// (g - k m^2 - 2 omega m) / (2 omega).
double current_from_m(const PhysicalConstants& pc, double k, double m) {
  const Split km2 = wave_term(k, m);
  const double two_omega = 2.0 * pc.omega;
  const double r = two_omega * m;
  const double er = std::fma(two_omega, m, -r);
  return (((pc.g - km2.hi) - r) - (km2.lo + er)) / two_omega;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

bool contains(const ValidationReport& report, ViolationCode code) {
  return std::any_of(report.begin(), report.end(),
                     [code](const Violation& v) { return v.code == code; });
}

const char* to_string(ViolationCode code) {
  switch (code) {
  case ViolationCode::NonFinite: return "non_finite";
  case ViolationCode::OmegaNegative: return "omega_negative";
  case ViolationCode::GravityNonPositive: return "g_non_positive";
  case ViolationCode::DensityNonPositive: return "rho_non_positive";
  case ViolationCode::WaveNumberNonPositive: return "k_non_positive";
  case ViolationCode::SurfaceLabelPositive: return "b0_positive";
  case ViolationCode::CurrentMismatch: return "current_mismatch";
  case ViolationCode::RegimeOmegaMismatch: return "regime_omega_mismatch";
  case ViolationCode::ClassicalDispersion: return "classical_dispersion";
  case ViolationCode::GeophysicalSpeed: return "geophysical_speed";
  case ViolationCode::CurrentUpperBound: return "current_upper_bound";
  case ViolationCode::EastwardSpeedBound: return "eastward_speed_bound";
  }
  return "unknown";
}

const char* to_string(Regime regime) {
  return regime == Regime::Classical ? "classical" : "geophysical";
}

const char* to_string(Branch branch) {
  return branch == Branch::Lower ? "lower" : "upper";
}

WaveParameters resolve_classical(const PhysicalConstants& constants, double k,
                                 int sign_m, double U, double b0) {
  if (constants.omega != 0.0) {
    throw RegimeMismatchError("classical regime requires omega = 0");
  }
  require_positive_constants(constants);
  require_wave_number(k);
  require_surface_label(b0);
  if (sign_m != 1 && sign_m != -1) {
    throw DomainError("sign_m must be +1 or -1");
  }
  if (!std::isfinite(U)) {
    throw DomainError("current U must be finite");
  }

  WaveParameters p;
  p.constants = constants;
  p.k = k;
  p.b0 = b0;
  p.m = sign_m * std::sqrt(constants.g / k);
  p.U = U;
  p.c = U + p.m;
  p.regime = Regime::Classical;
  p.resolution = Resolution::ClassicalSignCurrent;
  return p;
}

WaveParameters resolve_geophysical_from_m(const PhysicalConstants& constants,
                                          double k, double m, double b0) {
  if (!(constants.omega > 0.0)) {
    throw RegimeMismatchError("geophysical regime requires omega > 0");
  }
  require_positive_constants(constants);
  require_wave_number(k);
  require_surface_label(b0);
  if (!std::isfinite(m)) {
    throw DomainError("m must be finite");
  }

  WaveParameters p;
  p.constants = constants;
  p.k = k;
  p.b0 = b0;
  p.m = m;
  p.c = speed_from_m(constants, k, m);
  p.U = current_from_m(constants, k, m);
  p.regime = Regime::Geophysical;
  p.resolution = Resolution::GeophysicalFromM;
  return p;
}

WaveParameters resolve_geophysical_from_current(
    const PhysicalConstants& constants, double k, double U, Branch branch,
    double b0) {
  if (!(constants.omega > 0.0)) {
    throw RegimeMismatchError("geophysical regime requires omega > 0");
  }
  require_positive_constants(constants);
  require_wave_number(k);
  require_surface_label(b0);
  if (!std::isfinite(U)) {
    throw DomainError("current U must be finite");
  }

  const double omega = constants.omega;
  // Quarter discriminant of k m^2 + 2 omega m + (2 omega U - g).
  const double two_omega_u = 2.0 * omega * U;
  double quarter_disc = omega * omega + k * (constants.g - two_omega_u);
  const double rounding =
      8.0 * kEps * (omega * omega + k * (constants.g + std::abs(two_omega_u)));
  if (quarter_disc < 0.0) {
    if (quarter_disc < -rounding) {
      throw NoSolutionError("no real m for U = " + fmt(U) +
                            ": the current exceeds (omega^2 + k g)/(2 k omega) = " +
                            fmt(max_current(constants, k)));
    }
    quarter_disc = 0.0;
  }
  const double s = std::sqrt(quarter_disc);
  // omega + s > 0, so neither root suffers cancellation in this form.
  const double lower = -(omega + s) / k;
  const double upper = s == 0.0 ? lower : (constants.g - two_omega_u) / (omega + s);

  WaveParameters p;
  p.constants = constants;
  p.k = k;
  p.b0 = b0;
  p.m = branch == Branch::Lower ? lower : upper;
  p.U = U;
  p.c = U + p.m;
  p.regime = Regime::Geophysical;
  p.resolution = Resolution::GeophysicalFromCurrent;
  p.branch = branch;
  return p;
}

RegimeConstants regime_constants(const PhysicalConstants& constants,
                                 double k) {
  require_wave_number(k);
  require_positive_constants(constants);
  const double omega = constants.omega;
  const double gk = constants.g * k;
  const double s12 = std::sqrt(omega * omega + gk);
  const double s34 = std::sqrt(4.0 * omega * omega + gk);
  RegimeConstants rc;
  rc.m1 = -(omega + s12) / k;
  rc.m2 = constants.g / (omega + s12); // = (-omega + s12)/k without cancellation
  rc.m3 = -(2.0 * omega + s34) / k;
  rc.m4 = constants.g / (2.0 * omega + s34);
  return rc;
}

double max_current(const PhysicalConstants& constants, double k) {
  require_wave_number(k);
  if (constants.omega == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double omega = constants.omega;
  return (omega * omega + k * constants.g) / (2.0 * k * omega);
}

double current_noise_floor(const WaveParameters& p) {
  const double scale = std::abs(p.c) + std::abs(p.m);
  if (p.regime == Regime::Classical || p.constants.omega == 0.0) {
    return 16.0 * kEps * scale;
  }
  const double conditioning =
      std::abs(p.m) * (p.k * std::abs(p.m) + p.constants.omega) / p.constants.omega;
  return 16.0 * kEps * (scale + conditioning);
}

double speed_noise_floor(const WaveParameters& p) {
  const double scale = std::abs(p.U) + std::abs(p.m);
  if (p.regime == Regime::Classical || p.constants.omega == 0.0) {
    return 16.0 * kEps * scale;
  }
  const double conditioning = p.k * p.m * p.m / p.constants.omega;
  return 16.0 * kEps * (scale + conditioning);
}

bool has_zero_current(const WaveParameters& p) {
  return std::abs(p.U) <= current_noise_floor(p);
}

bool has_zero_speed(const WaveParameters& p) {
  return std::abs(p.c) <= speed_noise_floor(p);
}

ValidationReport validate(const WaveParameters& p) {
  ValidationReport report;
  auto add = [&report](ViolationCode code, std::string msg) {
    report.push_back({code, std::move(msg)});
  };

  const PhysicalConstants& pc = p.constants;
  for (double v : {pc.omega, pc.g, pc.rho, pc.p0, p.k, p.b0, p.m, p.c, p.U}) {
    if (!std::isfinite(v)) {
      add(ViolationCode::NonFinite, "parameter set contains a non-finite value");
      return report;
    }
  }

  if (pc.omega < 0.0) add(ViolationCode::OmegaNegative, "omega must be >= 0");
  if (!(pc.g > 0.0)) add(ViolationCode::GravityNonPositive, "g must be > 0");
  if (!(pc.rho > 0.0)) add(ViolationCode::DensityNonPositive, "rho must be > 0");
  if (!(p.k > 0.0)) add(ViolationCode::WaveNumberNonPositive, "k must be > 0");
  if (p.b0 > 0.0) {
    add(ViolationCode::SurfaceLabelPositive, "b0 = " + fmt(p.b0) + " must be <= 0");
  }

  const double uscale = std::max({std::abs(p.c), std::abs(p.m), std::abs(p.U)});
  if (std::abs(p.U - (p.c - p.m)) > 8.0 * kEps * uscale) {
    add(ViolationCode::CurrentMismatch,
        "U = " + fmt(p.U) + " differs from c - m = " + fmt(p.c - p.m));
  }

  if (!(p.k > 0.0) || !(pc.g > 0.0)) {
    return report;
  }

  const double km2 = p.k * p.m * p.m;
  if (p.regime == Regime::Classical) {
    if (pc.omega != 0.0) {
      add(ViolationCode::RegimeOmegaMismatch, "classical regime requires omega = 0");
    }
    if (std::abs(km2 - pc.g) > 16.0 * kEps * pc.g) {
      add(ViolationCode::ClassicalDispersion,
          "m^2 = " + fmt(p.m * p.m) + " differs from g/k = " + fmt(pc.g / p.k));
    }
    return report;
  }

  if (!(pc.omega > 0.0)) {
    add(ViolationCode::RegimeOmegaMismatch, "geophysical regime requires omega > 0");
    return report;
  }
  const double two_omega = 2.0 * pc.omega;
  const double speed_scale =
      pc.g + km2 + two_omega * (std::abs(p.c) + std::abs(p.U) + std::abs(p.m));
  if (std::abs(two_omega * p.c - (pc.g - km2)) > 32.0 * kEps * speed_scale) {
    add(ViolationCode::GeophysicalSpeed,
        "c = " + fmt(p.c) + " violates c = (g - k m^2)/(2 omega) = " +
            fmt((pc.g - km2) / two_omega));
  }
  const double u_max = max_current(pc, p.k);
  if (p.U > u_max * (1.0 + 8.0 * kEps)) {
    add(ViolationCode::CurrentUpperBound,
        "U = " + fmt(p.U) + " exceeds (omega^2 + k g)/(2 k omega) = " + fmt(u_max));
  }
  const double c_max = pc.g / two_omega;
  if (p.c > c_max * (1.0 + 8.0 * kEps)) {
    add(ViolationCode::EastwardSpeedBound,
        "c = " + fmt(p.c) + " exceeds g/(2 omega) = " + fmt(c_max));
  }
  return report;
}

} // namespace gerstner
