#include "dslab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dslab/report.hpp"

namespace dslab {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

double param(const RunConfig& cfg, const std::string& key, double fallback) {
  auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

int int_param(const RunConfig& cfg, const std::string& key, int fallback) {
  const double v = param(cfg, key, fallback);
  if (v != std::round(v)) invalid("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

void allow_params(const RunConfig& cfg, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : cfg.params) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; })) {
      invalid("surface '" + cfg.surface + "' has no parameter '" + k + "'");
    }
  }
}

/// a and b with a^2 + b^2 = 1; a missing one is completed.
std::pair<double, double> radii(const RunConfig& cfg, double a0, double b0) {
  const bool ha = cfg.params.count("a"), hb = cfg.params.count("b");
  double a = param(cfg, "a", a0), b = param(cfg, "b", b0);
  if (ha && !hb) b = std::sqrt(std::max(0.0, 1 - a * a));
  if (hb && !ha) a = std::sqrt(std::max(0.0, 1 - b * b));
  return {a, b};
}

json surface_json(const RunConfig& cfg) {
  if (!cfg.input.empty()) return {{"source", "file"}, {"path", cfg.input.string()}};
  json p = json::object();
  for (const auto& [k, v] : cfg.params) p[k] = v;
  return {{"source", "builtin"}, {"name", cfg.surface}, {"params", p}};
}

json header(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["surface"] = surface_json(cfg);
  if (cfg.stamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    j["generated_at"] = s.str();
  }
  return j;
}

void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
}

InvariantData analyze_surface(const RunConfig& cfg) { return compute_invariants(build_surface(cfg)); }

bool lies_in_s3(const LiftField& lift) { return lift.sphere_dim() == 3 || lift.psi[5].sup_norm() == 0.0; }

}  // namespace

std::map<std::string, double> parse_params(const std::string& s) {
  std::map<std::string, double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::Parse, "malformed parameter '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size()) throw Error(ErrorCode::Parse, "malformed value in '" + item + "'");
    out[key] = v;
  }
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  int n1 = 0, n2 = 0;
  char x = 0, extra = 0;
  std::istringstream in(s);
  if (!(in >> n1 >> x >> n2) || x != 'x' || (in >> extra)) throw Error(ErrorCode::Parse, "grid must be N1xN2, got '" + s + "'");
  if (n1 < 8 || n2 < 8 || n1 % 2 || n2 % 2) invalid("grid resolutions must be even and at least 8");
  return {n1, n2};
}

void validate(const RunConfig& cfg) {
  if (cfg.surface.empty() == cfg.input.empty()) invalid("exactly one of --surface and --input is required");
  if (cfg.n1 % 2 || cfg.n2 % 2 || cfg.n1 < 8 || cfg.n2 < 8) invalid("grid resolutions must be even and at least 8");
  if (!(cfg.tol_stat > 0) || !(cfg.umbilic_eps > 0) || !(cfg.tol_solv > 0)) invalid("tolerances must be positive");
  if (cfg.command == "flow") {
    if (!(cfg.dt > 0) || !std::isfinite(cfg.dt)) invalid("--dt must be positive");
    if (cfg.steps < 0) invalid("--steps must be non-negative");
  }
  if (cfg.command == "make-surface" && cfg.out.empty()) invalid("make-surface requires --out");
}

LiftField build_surface(const RunConfig& cfg) {
  if (!cfg.input.empty()) return load_immersion(cfg.input);
  const double r = 1 / std::sqrt(2.0);
  if (cfg.surface == "clifford") {
    allow_params(cfg, {});
    return homogeneous_torus(r, r, cfg.n1, cfg.n2);
  }
  if (cfg.surface == "homogeneous") {
    allow_params(cfg, {"a", "b"});
    const auto [a, b] = radii(cfg, 0.6, 0.8);
    return homogeneous_torus(a, b, cfg.n1, cfg.n2);
  }
  if (cfg.surface == "perturbed") {
    allow_params(cfg, {"a", "b", "eps", "mode"});
    const auto [a, b] = radii(cfg, r, r);
    return perturb_profile(a, b, param(cfg, "eps", 1e-2), int_param(cfg, "mode", 2), cfg.n1, cfg.n2).lift;
  }
  if (cfg.surface == "product") {
    allow_params(cfg, {"a", "b", "eps", "m", "l"});
    const auto [a, b] = radii(cfg, r, r);
    return product_torus(a, b, param(cfg, "eps", 1e-2), int_param(cfg, "m", 2), int_param(cfg, "l", 3), cfg.n1,
                         cfg.n2);
  }
  invalid("unknown surface '" + cfg.surface + "'");
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const InvariantData inv = analyze_surface(cfg);
  json j = header(cfg);
  j["invariants"] = invariants_json(inv, cfg.tol_solv);
  if (!cfg.dump_fields.empty()) write_field_dump(cfg.dump_fields, inv);
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_stationary(const RunConfig& cfg, std::ostream& out) {
  const InvariantData inv = analyze_surface(cfg);
  const ClassificationReport r = classify(inv, cfg.tol_stat, cfg.umbilic_eps);
  json j = header(cfg);
  j["classification"] = classification_json(r);
  j["stationarity"] = stationarity_json(r.stationarity);
  if (inv.s3) j["s3"] = s3_json(s3_decompose(inv));
  if (!cfg.dump_fields.empty()) write_field_dump(cfg.dump_fields, inv);
  emit(cfg, j, out);
  return r.consistent ? kExitOk : kExitInconsistent;
}

int cmd_flow(const RunConfig& cfg, std::ostream& out) {
  const LiftField start = build_surface(cfg);
  const EvolveResult res = evolve(start, cfg.dt, cfg.steps, cfg.scheme);
  if (!cfg.trace.empty()) write_trace_csv(cfg.trace, res.trace);
  if (!cfg.final_surface.empty()) {
    const Ambient amb = cfg.ambient.value_or(lies_in_s3(res.psi) ? Ambient::S3 : Ambient::S4);
    write_immersion(cfg.final_surface, res.psi, amb);
  }
  json j = header(cfg);
  j["scheme"] = scheme_name(cfg.scheme);
  j["dt"] = cfg.dt;
  j["steps"] = cfg.steps;
  const FlowRecord& first = res.trace.front();
  const FlowRecord& last = res.trace.back();
  j["initial"] = trace_record_json(first);
  j["final"] = trace_record_json(last);
  double conf = 0;
  for (const FlowRecord& r : res.trace) conf = std::max(conf, r.conformality);
  j["max_conf_residual"] = conf;
  j["drift"] = {{"kappa_sup", std::abs(last.kappa_sup - first.kappa_sup)},
                {"c_sup", std::abs(last.c_sup - first.c_sup)},
                {"willmore", std::abs(last.willmore - first.willmore)}};
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_quartic(const RunConfig& cfg, std::ostream& out) {
  const InvariantData inv = analyze_surface(cfg);
  const QuarticReport r = voss_classify(inv, cfg.umbilic_eps);
  json j = header(cfg);
  j["quartic"] = quartic_json(r);
  if (!cfg.dump_fields.empty()) write_field_dump(cfg.dump_fields, inv, &r);
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_make_surface(const RunConfig& cfg, std::ostream& out) {
  const LiftField lift = build_surface(cfg);
  const Ambient amb = cfg.ambient.value_or(lies_in_s3(lift) ? Ambient::S3 : Ambient::S4);
  write_immersion(cfg.out, lift, amb);
  out << "wrote " << cfg.out.string() << " (" << ambient_name(amb) << ", " << lift.grid().n1 << "x"
      << lift.grid().n2 << ")\n";
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformal invariants, flows and stationarity tests for tori in the conformal 4-sphere", "dslab"};
  RunConfig cfg;
  std::string params, grid = "32x32", scheme = "rk4", ambient;
  std::string input, out_path, dump, trace, final_path;

  app.add_option("command", cfg.command, "analyze | stationary | flow | quartic | make-surface")
      ->required()
      ->check(CLI::IsMember({"analyze", "stationary", "flow", "quartic", "make-surface"}));
  app.add_option("--surface", cfg.surface, "clifford | homogeneous | perturbed | product")
      ->check(CLI::IsMember({"clifford", "homogeneous", "perturbed", "product"}));
  app.add_option("--param", params, "surface parameters k=v[,k=v]");
  app.add_option("--input", input, "immersion file");
  app.add_option("--grid", grid, "resolution N1xN2")->capture_default_str();
  app.add_option("--out", out_path, "report (or surface) output path; stdout when omitted");
  app.add_option("--dump-fields", dump, "CSV field dump path");
  app.add_option("--tol-stat", cfg.tol_stat, "stationarity tolerance")->capture_default_str();
  app.add_option("--umbilic-eps", cfg.umbilic_eps, "umbilic mask threshold")->capture_default_str();
  app.add_option("--tol-solv", cfg.tol_solv, "solvability tolerance")->capture_default_str();
  app.add_option("--dt", cfg.dt, "flow time step")->capture_default_str();
  app.add_option("--steps", cfg.steps, "number of flow steps")->capture_default_str();
  app.add_option("--scheme", scheme, "euler | rk4")->capture_default_str();
  app.add_option("--trace", trace, "flow trace CSV path");
  app.add_option("--final", final_path, "final surface path");
  app.add_option("--ambient", ambient, "r3 | r4 | s3 | s4 | lightcone");
  app.add_flag("--stamp", cfg.stamp, "add a generation timestamp to reports");
  app.set_config("--config", "", "key=value file; command line flags take precedence");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[" << error_tag(ErrorCode::Parse) << "]: " << e.what() << "\n";
    err << "usage: dslab <command> [--surface NAME | --input PATH] [options]; see --help\n";
    return kExitUsage;
  }

  try {
    cfg.params = parse_params(params);
    std::tie(cfg.n1, cfg.n2) = parse_grid(grid);
    cfg.scheme = parse_scheme(scheme);
    if (!ambient.empty()) cfg.ambient = parse_ambient(ambient);
    cfg.input = input;
    cfg.out = out_path;
    cfg.dump_fields = dump;
    cfg.trace = trace;
    cfg.final_surface = final_path;
    validate(cfg);

    if (cfg.command == "analyze") return cmd_analyze(cfg, out);
    if (cfg.command == "stationary") {
      const int rc = cmd_stationary(cfg, out);
      if (rc == kExitInconsistent) {
        err << "error[theorem-inconsistent]: stationarity verdict disagrees with isothermic and constrained "
               "Willmore verdicts\n";
      }
      return rc;
    }
    if (cfg.command == "flow") return cmd_flow(cfg, out);
    if (cfg.command == "quartic") return cmd_quartic(cfg, out);
    return cmd_make_surface(cfg, out);
  } catch (const Error& e) {
    err << "error[" << error_tag(e.code()) << "]: " << e.what() << "\n";
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Parse) {
      err << "usage: dslab <command> [--surface NAME | --input PATH] [options]; see --help\n";
    }
    switch (e.code()) {
      case ErrorCode::StepRejected: return kExitStepRejected;
      case ErrorCode::Io: return kExitIo;
      default: return kExitUsage;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error[" << error_tag(ErrorCode::Io) << "]: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace dslab
