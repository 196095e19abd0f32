#pragma once

#include <string>
#include <vector>

namespace gerstner {

enum class Regime { Classical, Geophysical };

/// Root selection for the current-driven constructor.
enum class Branch { Lower, Upper };

/// Records which constructor produced a parameter set, so that the set can
/// be serialized by its defining inputs and rebuilt bit-exactly.
enum class Resolution {
  ClassicalSignCurrent,
  GeophysicalFromM,
  GeophysicalFromCurrent,
  Manual
};

struct PhysicalConstants {
  double omega = 7.3e-5; // rad/s
  double g = 9.8;        // m/s^2
  double rho = 1000.0;   // kg/m^3
  double p0 = 101325.0;  // Pa

  /// Earth defaults with the Coriolis term switched off.
  static PhysicalConstants without_rotation() {
    PhysicalConstants pc;
    pc.omega = 0.0;
    return pc;
  }
};

/// Complete constant set of one member of the Gerstner family.
///
/// The fields are plain data so that inconsistent sets can be built by hand
/// and handed to validate(); the resolve_* functions are the only producers
/// of consistent sets.
struct WaveParameters {
  PhysicalConstants constants;
  double k = 1.0;  // wave number, 1/m
  double b0 = 0.0; // surface label, m
  double m = 0.0;  // Gerstner parameter, m/s
  double c = 0.0;  // wave speed, m/s
  double U = 0.0;  // current, m/s
  Regime regime = Regime::Classical;
  Resolution resolution = Resolution::Manual;
  Branch branch = Branch::Upper; // meaningful for GeophysicalFromCurrent only
};

struct RegimeConstants {
  double m1;
  double m2;
  double m3;
  double m4;
};

enum class ViolationCode {
  NonFinite,
  OmegaNegative,
  GravityNonPositive,
  DensityNonPositive,
  WaveNumberNonPositive,
  SurfaceLabelPositive,
  CurrentMismatch,       // U != c - m
  RegimeOmegaMismatch,   // Classical with omega != 0, or Geophysical with omega == 0
  ClassicalDispersion,   // m^2 != g/k
  GeophysicalSpeed,      // c != (g - k m^2) / (2 omega)
  CurrentUpperBound,     // U above (omega^2 + k g) / (2 k omega)
  EastwardSpeedBound     // c > g / (2 omega)
};

struct Violation {
  ViolationCode code;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

bool contains(const ValidationReport& report, ViolationCode code);
const char* to_string(ViolationCode code);
const char* to_string(Regime regime);
const char* to_string(Branch branch);

/// omega = 0 regime: m = sign_m * sqrt(g/k), c = U + m.
WaveParameters resolve_classical(const PhysicalConstants& constants, double k,
                                 int sign_m, double U, double b0 = 0.0);

/// omega > 0 regime with m as the free parameter: c = (g - k m^2)/(2 omega).
WaveParameters resolve_geophysical_from_m(const PhysicalConstants& constants,
                                          double k, double m, double b0 = 0.0);

/// omega > 0 regime with the current as input. Solves
/// k m^2 + 2 omega m + (2 omega U - g) = 0 and keeps the requested root;
/// U is stored exactly as given.
WaveParameters resolve_geophysical_from_current(
    const PhysicalConstants& constants, double k, double U, Branch branch,
    double b0 = 0.0);

RegimeConstants regime_constants(const PhysicalConstants& constants, double k);

/// Largest current for which the geophysical dispersion relation has a real
/// root: (omega^2 + k g) / (2 k omega). +inf when omega = 0.
double max_current(const PhysicalConstants& constants, double k);

/// Empty iff every invariant of WaveParameters holds (to rounding).
ValidationReport validate(const WaveParameters& params);

/// Rounding floor of U for this parameter set. In the geophysical regime U
/// is an ill-conditioned function of m (dU/dm = -(k m + omega)/omega), so a
/// current derived from m carries an error of this size.
double current_noise_floor(const WaveParameters& params);

/// Rounding floor of c, analogous to current_noise_floor.
double speed_noise_floor(const WaveParameters& params);

/// U == 0 up to current_noise_floor.
bool has_zero_current(const WaveParameters& params);

/// c == 0 up to speed_noise_floor.
bool has_zero_speed(const WaveParameters& params);

} // namespace gerstner
