#pragma once

#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <cstddef>
#include <optional>

namespace gerstner {

enum class PathKind { Circle, HorizontalLine, Trochoid, ReflectedTrochoid };
enum class TrochoidType { Curtate, Cuspidal, Prolate };
enum class Orientation { Clockwise, Counterclockwise };

/// Geometry of a particle path. subtype is set iff kind is a trochoid,
/// orientation iff kind is Circle.
struct TrajectoryClass {
  PathKind kind = PathKind::HorizontalLine;
  std::optional<TrochoidType> subtype;
  std::optional<Orientation> orientation;

  friend bool operator==(const TrajectoryClass&, const TrajectoryClass&) = default;
};

/// The path is the locus of a point at point_distance from the center of a
/// circle of radius rolling_radius rolling on a line.
struct PathGeometry {
  double rolling_radius = 0.0; // |U|/(k|m|); +inf when m = 0
  double point_distance = 0.0; // e^{kb}/k
  std::optional<double> critical_depth;
};

struct Classification {
  TrajectoryClass cls;
  PathGeometry geometry;
};

enum class CurrentDirection { Favorable, Adverse, NoCurrent, NoWave };

const char* to_string(PathKind kind);
const char* to_string(TrochoidType type);
const char* to_string(Orientation orientation);
const char* to_string(CurrentDirection direction);

/// Signed horizontal drift per orbit, 2 pi U / (k |m|). Throws
/// UndefinedError for m = 0.
double drift(const WaveParameters& params);

/// Time between consecutive crest passages, 2 pi / (k |m|). Throws
/// UndefinedError for m = 0.
double orbit_period(const WaveParameters& params);

/// True iff every particle is a stagnation point, i.e. m = 0.
bool stagnation_check(const WaveParameters& params);

/// Favorable iff c U > 0, Adverse iff c U < 0; U and c are compared with
/// zero up to their rounding floors (current_noise_floor, speed_noise_floor).
CurrentDirection current_direction(const WaveParameters& params);

/// Geophysical cross-check from the position of m relative to m1, m2 and
/// +-sqrt(g/k). Boundary values map to NoCurrent (m1, m2) and NoWave
/// (+-sqrt(g/k)).
CurrentDirection current_direction_from_m(const PhysicalConstants& constants,
                                          double k, double m);

/// Depth at which the path is an exact cycloid, (1/k) ln|U/m|. Empty when
/// m = 0 or U = 0.
std::optional<double> critical_depth(const WaveParameters& params);

/// Closed-form classification of the path of a particle on the level b.
Classification classify_trajectory(const WaveParameters& params, double b);

struct OracleOptions {
  std::size_t samples = 2048;   // per orbit
  double tolerance = 1e-6;      // ambiguity band, relative
  double tie_tolerance = 1e-10; // band in which a cusp is accepted
  double closure_tolerance = 1e-9;
};

/// Classification from a sampled orbit alone, without the closed-form
/// thresholds. Empty when the samples are ambiguous within tolerance.
std::optional<TrajectoryClass> classify_oracle(const WaveParameters& params,
                                               double b,
                                               const OracleOptions& options = {});

/// Point of the path of `label` at the rescaled time
/// tau = sign(m) k (m t - a). Throws UndefinedError for m = 0.
Position reparametrize_tau(const WaveParameters& params, ParticleLabel label,
                           double tau);

/// Inverse of the rescaling: the time t at which the particle reaches tau.
double time_from_tau(const WaveParameters& params, ParticleLabel label,
                     double tau);

} // namespace gerstner
