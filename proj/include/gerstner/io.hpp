#pragma once

#include "gerstner/analysis.hpp"
#include "gerstner/fields.hpp"
#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gerstner::io {

/// Decimal with 17 significant digits; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

/// Strict decimal parse of the whole string. Throws ParseError.
double parse_double(std::string_view text, std::string_view what);

/// Raw parameter inputs from flags or a key=value document. Exactly one
/// source must be set: m, U + branch, or U + sign_m.
struct ParameterInput {
  std::optional<Regime> regime;
  std::optional<double> omega, g, rho, p0, k, b0;
  std::optional<double> m, U;
  std::optional<int> sign_m;
  std::optional<Branch> branch;

  /// Fields set in `other` override the ones here.
  void merge(const ParameterInput& other);
};

/// Parses `key=value` lines; `#` starts a comment, blank lines are ignored.
ParameterInput parse_parameter_document(std::string_view text);

/// Builds a parameter set from the inputs. ParseError when the source is
/// missing or ambiguous; RegimeMismatchError, NoSolutionError or DomainError
/// when the inputs are well formed but violate a constraint.
WaveParameters resolve(const ParameterInput& input);

/// key=value document holding the defining inputs of `params`; parsing it
/// back through resolve() reproduces every field bit-exactly.
std::string serialize_parameters(const WaveParameters& params);

Regime parse_regime(std::string_view text);
Branch parse_branch(std::string_view text);
int parse_sign(std::string_view text);

/// Minimal streaming JSON writer with 17-significant-digit numbers.
/// Non-finite numbers are written as null.
class JsonWriter {
public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  template <typename T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }

private:
  void separate();
  void write_string(std::string_view s);

  std::ostream& os_;
  std::vector<bool> first_; // per open container: no element written yet
  bool after_key_ = false;
};

void write_parameters_json(JsonWriter& json, const WaveParameters& params);
void write_regime_constants_json(JsonWriter& json, const RegimeConstants& rc);
void write_validation_json(JsonWriter& json, const ValidationReport& report);
void write_residual_report_json(JsonWriter& json, const ResidualReport& report);
void write_classification_json(JsonWriter& json, const WaveParameters& params,
                               double b, const Classification& formula);
/// Same record with the geometric oracle verdict and an `agree` flag.
void write_classification_json(JsonWriter& json, const WaveParameters& params,
                               double b, const Classification& formula,
                               const std::optional<TrajectoryClass>& oracle);

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows);
void write_surface_csv(std::ostream& os, std::span<const SurfacePoint> rows);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace gerstner::io
