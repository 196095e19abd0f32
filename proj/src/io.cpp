#include "gerstner/io.hpp"

#include "gerstner/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace gerstner::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const char* resolution_name(Resolution r) {
  switch (r) {
  case Resolution::ClassicalSignCurrent: return "classical_sign_current";
  case Resolution::GeophysicalFromM: return "geophysical_from_m";
  case Resolution::GeophysicalFromCurrent: return "geophysical_from_current";
  case Resolution::Manual: return "manual";
  }
  return "?";
}

} // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("cannot parse " + std::string(what) + " from '" +
                     std::string(text) + "'");
  }
  return v;
}

Regime parse_regime(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "classical") return Regime::Classical;
  if (s == "geo" || s == "geophysical") return Regime::Geophysical;
  throw ParseError("regime must be 'classical' or 'geo', got '" + std::string(text) + "'");
}

Branch parse_branch(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "lower") return Branch::Lower;
  if (s == "upper") return Branch::Upper;
  throw ParseError("branch must be 'lower' or 'upper', got '" + std::string(text) + "'");
}

int parse_sign(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "+1" || s == "1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw ParseError("sign_m must be +1 or -1, got '" + std::string(text) + "'");
}

void ParameterInput::merge(const ParameterInput& o) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(regime, o.regime);
  take(omega, o.omega);
  take(g, o.g);
  take(rho, o.rho);
  take(p0, o.p0);
  take(k, o.k);
  take(b0, o.b0);
  take(m, o.m);
  take(U, o.U);
  take(sign_m, o.sign_m);
  take(branch, o.branch);
}

ParameterInput parse_parameter_document(std::string_view text) {
  ParameterInput in;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "regime") in.regime = parse_regime(value);
    else if (key == "omega") in.omega = parse_double(value, key);
    else if (key == "g") in.g = parse_double(value, key);
    else if (key == "rho") in.rho = parse_double(value, key);
    else if (key == "p0") in.p0 = parse_double(value, key);
    else if (key == "k") in.k = parse_double(value, key);
    else if (key == "b0") in.b0 = parse_double(value, key);
    else if (key == "m") in.m = parse_double(value, key);
    else if (key == "U") in.U = parse_double(value, key);
    else if (key == "sign_m") in.sign_m = parse_sign(value);
    else if (key == "branch") in.branch = parse_branch(value);
    else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                       std::string(key) + "'");
    }
  }
  return in;
}

WaveParameters resolve(const ParameterInput& in) {
  const bool from_m = in.m.has_value();
  const bool from_branch = in.U && in.branch;
  const bool from_sign = in.U && in.sign_m;
  const int sources = int(from_m) + int(from_branch) + int(from_sign);
  if (sources != 1 || (from_m && in.U) || (in.branch && in.sign_m)) {
    throw ParseError("give exactly one parameter source: m, U + branch, or U + sign_m");
  }

  Regime regime = from_sign ? Regime::Classical : Regime::Geophysical;
  if (in.regime) {
    if (*in.regime != regime) {
      throw ParseError(std::string("regime '") + to_string(*in.regime) +
                       "' does not match the parameter source (classical takes "
                       "U + sign_m, geophysical takes m or U + branch)");
    }
  }

  PhysicalConstants pc;
  if (regime == Regime::Classical) pc.omega = 0.0;
  if (in.omega) pc.omega = *in.omega;
  if (in.g) pc.g = *in.g;
  if (in.rho) pc.rho = *in.rho;
  if (in.p0) pc.p0 = *in.p0;
  const double k = in.k.value_or(1.0);
  const double b0 = in.b0.value_or(0.0);

  if (from_sign) return resolve_classical(pc, k, *in.sign_m, *in.U, b0);
  if (from_branch) return resolve_geophysical_from_current(pc, k, *in.U, *in.branch, b0);
  return resolve_geophysical_from_m(pc, k, *in.m, b0);
}

std::string serialize_parameters(const WaveParameters& p) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("regime", p.regime == Regime::Classical ? "classical" : "geo");
  line("omega", format_double(p.constants.omega));
  line("g", format_double(p.constants.g));
  line("rho", format_double(p.constants.rho));
  line("p0", format_double(p.constants.p0));
  line("k", format_double(p.k));
  line("b0", format_double(p.b0));
  switch (p.resolution) {
  case Resolution::ClassicalSignCurrent:
    line("U", format_double(p.U));
    line("sign_m", p.m < 0.0 ? "-1" : "+1");
    break;
  case Resolution::GeophysicalFromCurrent:
    line("U", format_double(p.U));
    line("branch", to_string(p.branch));
    break;
  case Resolution::GeophysicalFromM:
  case Resolution::Manual:
    line("m", format_double(p.m));
    break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JsonWriter

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) os_ << ',';
    first_.back() = false;
  }
}

void JsonWriter::write_string(std::string_view s) {
  os_ << '"';
  for (char ch : s) {
    switch (ch) {
    case '"': os_ << "\\\""; break;
    case '\\': os_ << "\\\\"; break;
    case '\n': os_ << "\\n"; break;
    case '\t': os_ << "\\t"; break;
    default:
      if (static_cast<unsigned char>(ch) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", ch);
        os_ << buf;
      } else {
        os_ << ch;
      }
    }
  }
  os_ << '"';
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  os_ << '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  os_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  os_ << '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  os_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  separate();
  write_string(name);
  os_ << ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) return null();
  separate();
  os_ << format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  separate();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separate();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  os_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  write_string(v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  os_ << "null";
  return *this;
}

// ---------------------------------------------------------------------------

void write_parameters_json(JsonWriter& json, const WaveParameters& p) {
  json.begin_object()
      .field("regime", p.regime == Regime::Classical ? "classical" : "geophysical")
      .field("resolution", resolution_name(p.resolution))
      .field("omega", p.constants.omega)
      .field("g", p.constants.g)
      .field("rho", p.constants.rho)
      .field("p0", p.constants.p0)
      .field("k", p.k)
      .field("b0", p.b0)
      .field("m", p.m)
      .field("c", p.c)
      .field("U", p.U);
  if (p.resolution == Resolution::GeophysicalFromCurrent) {
    json.field("branch", to_string(p.branch));
  }
  json.end_object();
}

void write_regime_constants_json(JsonWriter& json, const RegimeConstants& rc) {
  json.begin_object()
      .field("m1", rc.m1)
      .field("m2", rc.m2)
      .field("m3", rc.m3)
      .field("m4", rc.m4)
      .end_object();
}

void write_validation_json(JsonWriter& json, const ValidationReport& report) {
  json.begin_array();
  for (const Violation& v : report) {
    json.begin_object()
        .field("code", to_string(v.code))
        .field("message", v.message)
        .end_object();
  }
  json.end_array();
}

void write_residual_report_json(JsonWriter& json, const ResidualReport& r) {
  json.begin_object()
      .field("momentum_x", r.momentum_x)
      .field("momentum_z", r.momentum_z)
      .field("divergence", r.divergence)
      .field("dynamic_bc", r.dynamic_bc)
      .field("kinematic_bc", r.kinematic_bc)
      .field("farfield", r.farfield)
      .field("h", r.h)
      .field("h_t", r.h_t);
  json.key("grid")
      .begin_object()
      .field("nx", r.grid.nx)
      .field("nz", r.grid.nz)
      .field("x_min", r.grid.x_min)
      .field("x_max", r.grid.x_max)
      .field("z_min", r.grid.z_min)
      .field("z_max", r.grid.z_max)
      .field("t", r.grid.t)
      .end_object();
  json.field("farfield_depth", r.farfield_depth)
      .field("interior_samples", r.interior_samples)
      .field("surface_samples", r.surface_samples)
      .field("excluded_cusps", r.excluded_cusps)
      .field("farfield_samples", r.farfield_samples)
      .field("unresolved", r.unresolved)
      .end_object();
}

namespace {

void class_fields(JsonWriter& json, const TrajectoryClass& cls) {
  json.field("kind", to_string(cls.kind));
  json.key("subtype");
  if (cls.subtype) json.value(to_string(*cls.subtype));
  else json.null();
  json.key("orientation");
  if (cls.orientation) json.value(to_string(*cls.orientation));
  else json.null();
}

void classification_fields(JsonWriter& json, const WaveParameters& params, double b,
                           const Classification& formula) {
  json.field("b", b);
  class_fields(json, formula.cls);
  json.field("rolling_radius", formula.geometry.rolling_radius)
      .field("point_distance", formula.geometry.point_distance);
  json.key("critical_depth");
  if (formula.geometry.critical_depth) json.value(*formula.geometry.critical_depth);
  else json.null();
  if (params.m != 0.0) {
    json.field("drift", drift(params)).field("period", orbit_period(params));
  }
}

} // namespace

void write_classification_json(JsonWriter& json, const WaveParameters& params,
                               double b, const Classification& formula) {
  json.begin_object();
  classification_fields(json, params, b, formula);
  json.end_object();
}

void write_classification_json(JsonWriter& json, const WaveParameters& params,
                               double b, const Classification& formula,
                               const std::optional<TrajectoryClass>& oracle) {
  json.begin_object();
  classification_fields(json, params, b, formula);
  json.key("oracle");
  if (oracle) {
    json.begin_object();
    class_fields(json, *oracle);
    json.end_object();
  } else {
    json.null();
  }
  json.field("agree", oracle.has_value() && *oracle == formula.cls).end_object();
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows) {
  os << "t,a,b,X,Z,u,w,ax,az\n";
  for (const TrajectorySample& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.label.a) << ','
       << format_double(r.label.b) << ',' << format_double(r.state.x) << ','
       << format_double(r.state.z) << ',' << format_double(r.state.u) << ','
       << format_double(r.state.w) << ',' << format_double(r.state.ax) << ','
       << format_double(r.state.az) << '\n';
  }
}

void write_surface_csv(std::ostream& os, std::span<const SurfacePoint> rows) {
  os << "t,X,eta\n";
  for (const SurfacePoint& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.x) << ','
       << format_double(r.eta) << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                ec.message());
  }
}

} // namespace gerstner::io
