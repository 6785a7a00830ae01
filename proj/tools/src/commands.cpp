#include "commands.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "bor/controlled.hpp"
#include "bor/error.hpp"
#include "bor/rde.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sewing.hpp"
#include "bor/vector_fields.hpp"
#include "bor_cli/cli.hpp"
#include "bor_cli/report.hpp"

namespace bor::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RegularityParams params_of(const RegularityOptions& r) {
  RegularityParams p{r.alpha, r.beta, parse_number(r.q)};
  p.validate();
  return p;
}

json config_of(const RegularityOptions& r) { return {{"alpha", r.alpha}, {"beta", r.beta}, {"q", r.q}}; }

json config_of(const DriverOptions& d) {
  return {{"kind", d.kind},     {"dimension", d.dimension}, {"steps", d.steps},   {"horizon", d.horizon},
          {"seed", d.seed},     {"hurst", d.hurst},         {"method", d.method}, {"expression", d.expression}};
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

SampledPath load_input(const std::string& file, json& warnings) {
  std::vector<std::string> w;
  SampledPath p = load_path_file(file, &w);
  for (auto& s : w) warnings.push_back(s);
  return p;
}

RoughPath lift_path(const SampledPath& x, const std::string& mode, const std::string& storage = "auto") {
  StoragePolicy policy = StoragePolicy::automatic;
  if (storage == "dense") policy = StoragePolicy::dense;
  else if (storage == "implicit") policy = StoragePolicy::implicit;
  else if (storage != "auto") throw DomainError("unknown storage policy '" + storage + "'");

  if (mode == "stratonovich") return lift_scalar(x, ScalarLift::stratonovich);
  if (mode == "ito") return lift_scalar(x, ScalarLift::ito);
  if (mode == "leftpoint") return lift_md_leftpoint(x, policy);
  if (mode == "auto") {
    return x.dim() == 1 ? lift_scalar(x, ScalarLift::stratonovich) : lift_md_leftpoint(x, policy);
  }
  throw DomainError("unknown lift mode '" + mode + "'");
}

std::string path_csv(const SampledPath& p) {
  std::ostringstream os;
  save_path(os, p);
  return os.str();
}

void emit(const json& report, const std::string& file, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (file.empty()) {
    out << text;
  } else {
    write_atomic(resolve_output(file), text);
  }
}

// Y = (X, I): the driver as a path controlled by itself.
ControlledPath driver_as_controlled(const RoughPath& x) {
  const std::size_t n = x.dim(), pts = x.path().points();
  std::vector<double> id(pts * n * n, 0.0);
  for (std::size_t k = 0; k < pts; ++k) {
    for (std::size_t a = 0; a < n; ++a) id[k * n * n + a * n + a] = 1.0;
  }
  return make_controlled(x.path(), SampledPath(x.horizon(), n * n, std::move(id)), x);
}

}  // namespace

DriverSpec DriverOptions::spec() const {
  DriverSpec s;
  s.kind = parse_driver_kind(kind);
  s.dimension = dimension;
  s.n_steps = steps;
  s.horizon = horizon;
  s.seed = seed;
  s.hurst = hurst;
  if (method == "circulant") s.fbm_method = FbmMethod::circulant;
  else if (method == "cholesky") s.fbm_method = FbmMethod::cholesky;
  else throw DomainError("unknown fbm method '" + method + "'");
  s.expression = expression;
  s.validate();
  return s;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = Clock::now();
  const DriverSpec spec = o.driver.spec();
  const SampledPath path = simulate(spec);
  const auto file = resolve_output(o.out);
  write_atomic(file, path_csv(path));
  out << "simulated " << o.driver.kind << " path: N=" << path.steps() << ", T=" << path.horizon()
      << ", dim=" << path.dim() << ", seed=" << spec.seed << " -> " << file.string() << "\n";
  if (!o.report.empty()) {
    json config = config_of(o.driver);
    config["command"] = "simulate";
    config["out"] = o.out;
    json results{{"file", file.string()}, {"points", path.points()}, {"sup_norm", path.sup_norm()},
                 {"fingerprint", hex(fingerprint(path))}};
    emit(make_report(config, results, {{"warnings", json::array()}, {"elapsed_seconds", seconds_since(t0)}}),
         o.report, out);
  }
  return kExitOk;
}

int cmd_norm(const NormOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = Clock::now();
  json warnings = json::array();
  const RegularityParams params = params_of(o.reg);
  const SampledPath path = load_input(o.input, warnings);
  NormReport report = seminorm_dyadic(path, params);
  if (o.quadrature) report.seminorm_quadrature = seminorm_quadrature(path, params);
  const EquivalentNorms eq = equivalent_norms(path, params);

  json config = config_of(o.reg);
  config["command"] = "norm";
  config["input"] = o.input;
  config["quadrature"] = o.quadrature;
  json results = to_json(report);
  results["steps"] = path.steps();
  results["dimension"] = path.dim();
  results["orlicz_norm"] = number(orlicz_norm(path, params.beta));
  results["equivalent_norms"] = {{"n_phi", number(eq.n_phi)}, {"n_0", number(eq.n_0)}, {"n_inf", number(eq.n_inf)}};
  emit(make_report(config, results, {{"warnings", warnings}, {"elapsed_seconds", seconds_since(t0)}}), o.report, out);
  return kExitOk;
}

int cmd_lift(const LiftOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = Clock::now();
  json warnings = json::array();
  const RegularityParams params = params_of(o.reg);
  const SampledPath path = load_input(o.input, warnings);
  const RoughPath x = lift_path(path, o.mode, o.storage);
  if (!o.area_out.empty()) {
    std::ostringstream os;
    export_second_level_csv(os, x);
    write_atomic(resolve_output(o.area_out), os.str());
  }
  json config = config_of(o.reg);
  config["command"] = "lift";
  config["input"] = o.input;
  config["mode"] = o.mode;
  config["storage"] = o.storage;
  config["area_out"] = o.area_out;
  const auto area = x.second_level()(0, x.steps());
  json results{{"kind", to_string(x.kind())},
               {"dimension", x.dim()},
               {"steps", x.steps()},
               {"chen", to_json(x.chen())},
               {"second_level_total", area},
               {"fingerprint", hex(x.fingerprint())}};
  if (is_power_of_two(x.steps())) {
    results["rough_path_norm"] = number(rough_path_norm(x, params));
  } else {
    warnings.push_back("rough path norm skipped: N is not a power of two");
  }
  emit(make_report(config, results, {{"warnings", warnings}, {"elapsed_seconds", seconds_since(t0)}}), o.report, out);
  return kExitOk;
}

int cmd_integrate(const IntegrateOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = Clock::now();
  json warnings = json::array();
  const SampledPath path = load_input(o.input, warnings);
  const RoughPath x = lift_path(path, o.mode);
  const SmoothVectorField g = fields::by_name(o.integrand, x.dim(), 1);
  const ControlledPath y = compose(g, driver_as_controlled(x), x);
  const SewingResult sr = rough_integral(x, y, o.tol);
  write_atomic(resolve_output(o.out), path_csv(sr.integral));

  json config{{"command", "integrate"}, {"input", o.input},   {"mode", o.mode},
              {"integrand", o.integrand}, {"tol", o.tol}, {"out", o.out}};
  json results = to_json(sr, false);
  results["kind"] = to_string(x.kind());
  if (o.integrand == "identity" && x.kind() == LiftKind::stratonovich_scalar) {
    const double a = path.at(0, 0), b = path.at(path.steps(), 0);
    results["telescoping_reference"] = (b * b - a * a) / 2.0;
  }
  if (!sr.converged) warnings.push_back("sewing did not settle before the grid was exhausted");
  emit(make_report(config, results, {{"warnings", warnings}, {"elapsed_seconds", seconds_since(t0)}}), o.report, out);
  return sr.converged ? kExitOk : kExitNonConvergence;
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = Clock::now();
  json warnings = json::array();
  const RegularityParams params = params_of(o.reg);
  const SampledPath path = o.input.empty() ? simulate(o.driver.spec()) : load_input(o.input, warnings);
  const RoughPath x = lift_path(path, o.mode);
  if (o.y0.empty()) throw DomainError("--y0 needs at least one value");
  const std::size_t m = o.y0.size();
  RdeProblem problem{x, fields::by_name(o.field, m, x.dim()), o.y0, params,
                     WindowPolicy{o.window_fraction, o.max_halvings}};

  RdeSolution sol;
  if (o.scheme == "picard") {
    PicardOptions opt;
    opt.tol = o.tol;
    opt.max_iter = o.max_iter;
    sol = solve_picard(problem, opt);
  } else if (o.scheme == "onestep") {
    sol = solve_onestep(problem);
  } else {
    throw DomainError("unknown scheme '" + o.scheme + "'");
  }
  if (o.regularity && sol.converged) sol.regularity = regularity_report(sol, x, params);
  for (const auto& w : sol.warnings) warnings.push_back(w);

  json results = to_json(sol);
  results["scheme"] = o.scheme;
  if (o.oracle == "flow") {
    if (x.kind() != LiftKind::stratonovich_scalar) {
      throw DomainError("the flow oracle needs a scalar Stratonovich lift");
    }
    const SampledPath ref = stratonovich_flow(problem.field, o.y0, path);
    results["oracle"] = {{"kind", "flow"}, {"sup_error", sup_distance(sol.y, ref)}};
  } else if (o.oracle != "none") {
    throw DomainError("unknown oracle '" + o.oracle + "'");
  }

  const auto csv = resolve_output(o.out);
  write_atomic(csv, path_csv(sol.y));
  std::string report = o.report;
  if (report.empty()) report = std::filesystem::path(o.out).replace_extension(".json").string();

  json config = config_of(o.driver);
  config.update(config_of(o.reg));
  config.update({{"command", "solve"},
                 {"input", o.input},
                 {"mode", o.mode},
                 {"field", o.field},
                 {"y0", o.y0},
                 {"scheme", o.scheme},
                 {"tol", o.tol},
                 {"max_iter", o.max_iter},
                 {"window_fraction", o.window_fraction},
                 {"max_halvings", o.max_halvings},
                 {"regularity", o.regularity},
                 {"oracle", o.oracle},
                 {"out", o.out},
                 {"report", report}});
  emit(make_report(config, results, {{"warnings", warnings}, {"elapsed_seconds", seconds_since(t0)}}), report, out);
  out << "solved with " << o.scheme << ": converged=" << (sol.converged ? "true" : "false")
      << ", windows=" << sol.windows.size() << " -> " << csv.string() << "\n";
  return sol.converged ? kExitOk : kExitNonConvergence;
}

}  // namespace bor::cli
