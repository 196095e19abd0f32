#include "gerstner/cli.hpp"

#include "gerstner/analysis.hpp"
#include "gerstner/errors.hpp"
#include "gerstner/fields.hpp"
#include "gerstner/figures.hpp"
#include "gerstner/io.hpp"
#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace gerstner::cli {

namespace {

constexpr const char* kStagnationNote =
    "formal limit: every particle moves with the uniform speed g/(2 omega)";

struct ParamFlags {
  std::string regime, omega, g, rho, p0, k, b0, m, U, branch, sign_m, params_file;
  CLI::Option* o_regime = nullptr;
  CLI::Option* o_omega = nullptr;
  CLI::Option* o_g = nullptr;
  CLI::Option* o_rho = nullptr;
  CLI::Option* o_p0 = nullptr;
  CLI::Option* o_k = nullptr;
  CLI::Option* o_b0 = nullptr;
  CLI::Option* o_m = nullptr;
  CLI::Option* o_U = nullptr;
  CLI::Option* o_branch = nullptr;
  CLI::Option* o_sign_m = nullptr;
  CLI::Option* o_file = nullptr;
};

struct OutputFlags {
  std::string out;
  std::string format;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  f.o_regime = cmd->add_option("--regime", f.regime, "classical | geo");
  f.o_omega = cmd->add_option("--omega", f.omega, "rotation rate (rad/s)");
  f.o_g = cmd->add_option("--g", f.g, "gravitational acceleration (m/s^2)");
  f.o_rho = cmd->add_option("--rho", f.rho, "density (kg/m^3)");
  f.o_p0 = cmd->add_option("--p0", f.p0, "surface pressure (Pa)");
  f.o_k = cmd->add_option("--k", f.k, "wave number (1/m)");
  f.o_b0 = cmd->add_option("--b0", f.b0, "surface label (m)");
  f.o_m = cmd->add_option("--m", f.m, "Gerstner parameter m (m/s)");
  f.o_U = cmd->add_option("--U", f.U, "uniform current (m/s)");
  f.o_branch = cmd->add_option("--branch", f.branch, "lower | upper root for m given U");
  f.o_sign_m = cmd->add_option("--sign-m", f.sign_m, "+1 | -1, classical sign of m");
  f.o_file = cmd->add_option("--params-file", f.params_file, "key=value parameter document");
}

void add_output_flags(CLI::App* cmd, OutputFlags& f, const char* out_help) {
  cmd->add_option("--out", f.out, out_help);
  cmd->add_option("--format", f.format, "output format");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read parameter file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WaveParameters resolve_flags(const ParamFlags& f) {
  io::ParameterInput input;
  if (f.o_file->count() > 0) input = io::parse_parameter_document(read_file(f.params_file));

  io::ParameterInput flags;
  auto number = [](CLI::Option* o, const std::string& text, const char* what,
                   std::optional<double>& dst) {
    if (o->count() > 0) dst = io::parse_double(text, what);
  };
  if (f.o_regime->count() > 0) flags.regime = io::parse_regime(f.regime);
  number(f.o_omega, f.omega, "omega", flags.omega);
  number(f.o_g, f.g, "g", flags.g);
  number(f.o_rho, f.rho, "rho", flags.rho);
  number(f.o_p0, f.p0, "p0", flags.p0);
  number(f.o_k, f.k, "k", flags.k);
  number(f.o_b0, f.b0, "b0", flags.b0);
  number(f.o_m, f.m, "m", flags.m);
  number(f.o_U, f.U, "U", flags.U);
  if (f.o_branch->count() > 0) flags.branch = io::parse_branch(f.branch);
  if (f.o_sign_m->count() > 0) flags.sign_m = io::parse_sign(f.sign_m);

  const bool file_source = input.m || input.U || input.branch || input.sign_m;
  const bool flag_source = flags.m || flags.U || flags.branch || flags.sign_m;
  if (file_source && flag_source) {
    throw ParseError("parameter source given both in --params-file and on the command line");
  }
  input.merge(flags);
  WaveParameters params = io::resolve(input);
  const ValidationReport report = validate(params);
  if (!report.empty()) {
    throw RegimeMismatchError("invalid parameters: " + report.front().message);
  }
  return params;
}

void require_format(const OutputFlags& f, const char* allowed) {
  if (!f.format.empty() && f.format != allowed) {
    throw ParseError("format '" + f.format + "' is not available here; use " + allowed);
  }
}

void emit(const OutputFlags& f, const std::string& content, std::ostream& out) {
  if (f.out.empty() || f.out == "-") {
    out << content;
  } else {
    io::write_file_atomic(f.out, content);
  }
}

std::size_t positive_count(long long n, const char* what) {
  if (n < 1) throw ParseError(std::string(what) + " must be positive");
  return static_cast<std::size_t>(n);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gerstner-type equatorial waves on the f-plane", "gerstner"};
  app.require_subcommand(1);

  OutputFlags of;
  std::function<int()> action;

  // params
  CLI::App* params_cmd = app.add_subcommand("params", "resolve and validate a parameter set");
  ParamFlags pf_params;
  add_param_flags(params_cmd, pf_params);
  add_output_flags(params_cmd, of, "output file (default stdout)");
  params_cmd->callback([&] {
    action = [&] {
      require_format(of, "json");
      const WaveParameters p = resolve_flags(pf_params);
      const ValidationReport report = validate(p);
      std::ostringstream ss;
      io::JsonWriter json(ss);
      json.begin_object().key("parameters");
      io::write_parameters_json(json, p);
      json.key("regime_constants");
      io::write_regime_constants_json(json, regime_constants(p.constants, p.k));
      json.field("max_current", max_current(p.constants, p.k))
          .field("current_direction", to_string(current_direction(p)))
          .field("stagnation", stagnation_check(p));
      if (stagnation_check(p)) json.field("stagnation_note", kStagnationNote);
      json.key("validation");
      io::write_validation_json(json, report);
      json.end_object();
      ss << '\n';
      emit(of, ss.str(), out);
      return report.empty() ? kOk : kConstraint;
    };
  });

  // simulate
  double sim_a = 0.0, sim_t0 = 0.0, sim_periods = 1.0, sim_seconds = 0.0;
  std::string sim_b;
  long long sim_samples = 200;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "particle trajectory as CSV");
  ParamFlags pf_sim;
  add_param_flags(sim_cmd, pf_sim);
  add_output_flags(sim_cmd, of, "output file (default stdout)");
  sim_cmd->add_option("--a", sim_a, "horizontal label");
  CLI::Option* o_sim_b = sim_cmd->add_option("--b", sim_b, "depth label (default b0)");
  sim_cmd->add_option("--t0", sim_t0, "start time");
  CLI::Option* o_periods = sim_cmd->add_option("--periods", sim_periods, "duration in orbit periods");
  CLI::Option* o_seconds = sim_cmd->add_option("--seconds", sim_seconds, "duration in seconds");
  o_periods->excludes(o_seconds);
  sim_cmd->add_option("--samples", sim_samples, "number of rows");
  sim_cmd->callback([&] {
    action = [&] {
      require_format(of, "csv");
      const WaveParameters p = resolve_flags(pf_sim);
      const double b = o_sim_b->count() > 0 ? io::parse_double(sim_b, "b") : p.b0;
      double duration = 0.0;
      if (o_seconds->count() > 0) {
        duration = sim_seconds;
      } else {
        duration = sim_periods * orbit_period(p);
      }
      if (!(duration > 0.0)) throw ParseError("duration must be positive");
      const std::size_t n = positive_count(sim_samples, "--samples");
      if (n < 2) throw ParseError("--samples must be at least 2");
      const auto rows = sample_trajectory(p, {sim_a, b}, sim_t0, sim_t0 + duration, n);
      std::ostringstream ss;
      io::write_trajectory_csv(ss, rows);
      emit(of, ss.str(), out);
      return kOk;
    };
  });

  // surface
  double surf_t = 0.0;
  long long surf_samples = 200;
  CLI::App* surf_cmd = app.add_subcommand("surface", "free-surface profile over one wavelength as CSV");
  ParamFlags pf_surf;
  add_param_flags(surf_cmd, pf_surf);
  add_output_flags(surf_cmd, of, "output file (default stdout)");
  surf_cmd->add_option("--t", surf_t, "time");
  surf_cmd->add_option("--samples", surf_samples, "number of rows");
  surf_cmd->callback([&] {
    action = [&] {
      require_format(of, "csv");
      const WaveParameters p = resolve_flags(pf_surf);
      const auto rows = sample_surface(p, surf_t, positive_count(surf_samples, "--samples"));
      std::ostringstream ss;
      io::write_surface_csv(ss, rows);
      emit(of, ss.str(), out);
      return kOk;
    };
  });

  // verify
  long long grid_x = 20, grid_z = 20, levels = 3, surface_samples = 1000;
  double verify_h = 1e-3, verify_t = 0.0;
  bool order_flag = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "residuals of the Eulerian system as JSON");
  verify_cmd->set_help_flag("--help", "Print this help message and exit");
  ParamFlags pf_verify;
  add_param_flags(verify_cmd, pf_verify);
  add_output_flags(verify_cmd, of, "output file (default stdout)");
  verify_cmd->add_option("--grid-x", grid_x, "grid points in x");
  verify_cmd->add_option("--grid-z", grid_z, "grid points in z");
  verify_cmd->add_option("--h", verify_h, "finite-difference step (m)");
  verify_cmd->add_option("--t", verify_t, "time");
  verify_cmd->add_option("--levels", levels, "step halvings in the order study");
  verify_cmd->add_option("--surface-samples", surface_samples, "surface labels checked");
  verify_cmd->add_flag("--order-study", order_flag, "repeat with h/2, h/4 and report orders");
  verify_cmd->callback([&] {
    action = [&] {
      require_format(of, "json");
      const WaveParameters p = resolve_flags(pf_verify);
      if (!(verify_h > 0.0)) throw ParseError("--h must be positive");
      GridSpec grid = default_grid(p, positive_count(grid_x, "--grid-x"),
                                   positive_count(grid_z, "--grid-z"));
      grid.t = verify_t;
      const std::size_t ns = positive_count(surface_samples, "--surface-samples");
      std::ostringstream ss;
      io::JsonWriter json(ss);
      json.begin_object().key("parameters");
      io::write_parameters_json(json, p);
      std::size_t unresolved = 0;
      if (order_flag) {
        const OrderStudy study =
            order_study(p, grid, verify_h, positive_count(levels, "--levels"), ns);
        json.key("report");
        io::write_residual_report_json(json, study.reports.back());
        json.key("order_study").begin_object().key("reports").begin_array();
        for (const ResidualReport& r : study.reports) {
          io::write_residual_report_json(json, r);
          unresolved += r.unresolved;
        }
        json.end_array();
        auto list = [&json](const char* name, const std::vector<double>& v) {
          json.key(name).begin_array();
          for (double x : v) json.value(x);
          json.end_array();
        };
        list("order_momentum_x", study.order_momentum_x);
        list("order_momentum_z", study.order_momentum_z);
        list("order_divergence", study.order_divergence);
        json.end_object();
      } else {
        const ResidualReport r = verify_grid(p, grid, verify_h, ns);
        unresolved = r.unresolved;
        json.key("report");
        io::write_residual_report_json(json, r);
      }
      json.end_object();
      ss << '\n';
      emit(of, ss.str(), out);
      if (unresolved > 0) {
        err << "gerstner: " << unresolved << " grid points could not be inverted\n";
        return kNumerical;
      }
      return kOk;
    };
  });

  // classify
  std::string cls_b;
  std::vector<double> cls_depths;
  long long cls_samples = 2048;
  CLI::App* cls_cmd = app.add_subcommand("classify", "trajectory classification as JSON");
  ParamFlags pf_cls;
  add_param_flags(cls_cmd, pf_cls);
  add_output_flags(cls_cmd, of, "output file (default stdout)");
  CLI::Option* o_cls_b = cls_cmd->add_option("--b", cls_b, "depth label (default b0)");
  CLI::Option* o_depths =
      cls_cmd->add_option("--depths", cls_depths, "comma-separated depth labels")->delimiter(',');
  o_cls_b->excludes(o_depths);
  cls_cmd->add_option("--samples", cls_samples, "orbit samples for the geometric check");
  cls_cmd->callback([&] {
    action = [&] {
      require_format(of, "json");
      const WaveParameters p = resolve_flags(pf_cls);
      std::vector<double> depths = cls_depths;
      if (o_cls_b->count() > 0) depths = {io::parse_double(cls_b, "b")};
      if (depths.empty()) depths = {p.b0};
      OracleOptions options;
      options.samples = positive_count(cls_samples, "--samples");
      std::ostringstream ss;
      io::JsonWriter json(ss);
      json.begin_object().key("parameters");
      io::write_parameters_json(json, p);
      json.field("current_direction", to_string(current_direction(p)))
          .field("stagnation", stagnation_check(p));
      if (stagnation_check(p)) json.field("stagnation_note", kStagnationNote);
      json.key("records")
          .begin_array();
      for (double b : depths) {
        io::write_classification_json(json, p, b, classify_trajectory(p, b),
                                      classify_oracle(p, b, options));
      }
      json.end_array().end_object();
      ss << '\n';
      emit(of, ss.str(), out);
      return kOk;
    };
  });

  // figures
  int fig_which = 0;
  long long fig_samples = 400;
  std::string fig_dir = "figures";
  ParamFlags fig_pf;
  CLI::App* fig_cmd = app.add_subcommand("figures", "particle-path panels as SVG files");
  fig_cmd->add_option("--which", fig_which, "1 (no rotation) or 2 (rotation)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  fig_cmd->add_option("--out", fig_dir, "output directory");
  fig_cmd->add_option("--format", of.format, "output format");
  fig_cmd->add_option("--samples", fig_samples, "points per curve");
  fig_pf.o_omega = fig_cmd->add_option("--omega", fig_pf.omega, "rotation rate (rad/s)");
  fig_pf.o_g = fig_cmd->add_option("--g", fig_pf.g, "gravitational acceleration (m/s^2)");
  fig_cmd->callback([&] {
    action = [&] {
      require_format(of, "svg");
      PhysicalConstants pc;
      if (fig_pf.o_omega->count() > 0) pc.omega = io::parse_double(fig_pf.omega, "omega");
      if (fig_pf.o_g->count() > 0) pc.g = io::parse_double(fig_pf.g, "g");
      const std::size_t n = positive_count(fig_samples, "--samples");
      if (n < 2) throw ParseError("--samples must be at least 2");
      const std::vector<FigurePanel> panels = figure_panels(fig_which, pc);
      for (const FigurePanel& panel : panels) {
        const ValidationReport report = validate(panel.params);
        if (!report.empty()) {
          throw RegimeMismatchError("panel " + std::to_string(panel.index) + ": " +
                                    report.front().message);
        }
      }
      std::filesystem::create_directories(fig_dir);
      std::ostringstream ss;
      io::JsonWriter json(ss);
      json.begin_object().field("figure", fig_which).key("files").begin_array();
      for (const FigurePanel& panel : panels) {
        const auto curves = panel_curves(panel, n);
        const std::filesystem::path path =
            std::filesystem::path(fig_dir) / panel_filename(panel);
        io::write_file_atomic(path, render_panel_svg(panel, curves));
        json.value(path.generic_string());
      }
      json.end_array().end_object();
      out << ss.str() << '\n';
      return kOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const ParseError& e) {
    err << "gerstner: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "gerstner: " << e.what() << '\n';
    return kNumerical;
  } catch (const SingularityError& e) {
    err << "gerstner: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "gerstner: " << e.what() << '\n';
    return kConstraint;
  } catch (const std::exception& e) {
    err << "gerstner: " << e.what() << '\n';
    return kFailure;
  }
}

} // namespace gerstner::cli
