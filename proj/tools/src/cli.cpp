#include "bor_cli/cli.hpp"

#include <algorithm>
#include <ios>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bor/error.hpp"
#include "bor_cli/report.hpp"
#include "commands.hpp"

namespace bor::cli {
namespace {

void add_driver_options(CLI::App* cmd, DriverOptions& d) {
  cmd->add_option("--kind", d.kind, "Driver: brownian, fbm or deterministic")->capture_default_str();
  cmd->add_option("-n,--n,--dimension", d.dimension, "Driver dimension")->capture_default_str();
  cmd->add_option("--steps", d.steps, "Number of grid steps N (power of two)")->capture_default_str();
  cmd->add_option("--horizon", d.horizon, "Time horizon T")->capture_default_str();
  cmd->add_option("--seed", d.seed, "Random seed")->capture_default_str();
  cmd->add_option("--hurst", d.hurst, "Hurst index of fBm, in (1/3, 1/2]")->capture_default_str();
  cmd->add_option("--method", d.method, "fBm sampler: circulant or cholesky")->capture_default_str();
  cmd->add_option("--expression", d.expression, "Deterministic driver: zero, linear, quadratic, sine")
      ->capture_default_str();
}

void add_regularity_options(CLI::App* cmd, RegularityOptions& r) {
  cmd->add_option("--alpha", r.alpha, "Smoothness alpha")->capture_default_str();
  cmd->add_option("--beta", r.beta, "Orlicz exponent beta")->capture_default_str();
  cmd->add_option("--q", r.q, "Fine index q (number or inf)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential Besov-Orlicz rough path toolkit", "bor"};
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.set_version_flag("--version", version());
  app.require_subcommand(1, 1);

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate a driver path and write it as CSV");
  add_driver_options(c_sim, sim.driver);
  c_sim->add_option("--out", sim.out, "Output CSV")->capture_default_str();
  c_sim->add_option("--report", sim.report, "Also write a JSON report to this file");

  NormOptions norm;
  auto* c_norm = app.add_subcommand("norm", "Besov-Orlicz seminorm of a path CSV");
  c_norm->add_option("--input", norm.input, "Path CSV")->required();
  add_regularity_options(c_norm, norm.reg);
  c_norm->add_flag("--quadrature", norm.quadrature, "Add the quadrature cross-check estimate");
  c_norm->add_option("--report", norm.report, "Report file (default: stdout)");

  LiftOptions lift;
  auto* c_lift = app.add_subcommand("lift", "Lift a path to a level-2 rough path and check Chen's relation");
  c_lift->add_option("--input", lift.input, "Path CSV")->required();
  c_lift->add_option("--mode", lift.mode, "auto, stratonovich, ito or leftpoint")->capture_default_str();
  c_lift->add_option("--storage", lift.storage, "auto, dense or implicit (left-point lift)")->capture_default_str();
  add_regularity_options(c_lift, lift.reg);
  c_lift->add_option("--area-out", lift.area_out, "Export all second-level entries as CSV (N <= 256)");
  c_lift->add_option("--report", lift.report, "Report file (default: stdout)");

  IntegrateOptions integ;
  auto* c_int = app.add_subcommand("integrate", "Rough integral of g(X) against the lifted path");
  c_int->add_option("--input", integ.input, "Path CSV")->required();
  c_int->add_option("--mode", integ.mode, "Lift: auto, stratonovich, ito or leftpoint")->capture_default_str();
  c_int->add_option("--integrand", integ.integrand, "Built-in field g with Y = g(X)")->capture_default_str();
  c_int->add_option("--tol", integ.tol, "Sewing tolerance")->capture_default_str();
  c_int->add_option("--out", integ.out, "Integral path CSV")->capture_default_str();
  c_int->add_option("--report", integ.report, "Report file (default: stdout)");

  SolveOptions solve;
  auto* c_solve = app.add_subcommand("solve", "Solve dY = f(Y) dX by Picard iteration or the one-step scheme");
  c_solve->add_option("--input", solve.input, "Driver CSV (otherwise the driver is simulated)");
  add_driver_options(c_solve, solve.driver);
  c_solve->add_option("--mode", solve.mode, "Lift: auto, stratonovich, ito or leftpoint")->capture_default_str();
  c_solve->add_option("--field", solve.field, "Built-in vector field")->capture_default_str();
  c_solve->add_option("--y0", solve.y0, "Initial value")->expected(1, -1)->capture_default_str();
  c_solve->add_option("--scheme", solve.scheme, "picard or onestep")->capture_default_str();
  c_solve->add_option("--tol", solve.tol, "Picard tolerance")->capture_default_str();
  c_solve->add_option("--max-iter", solve.max_iter, "Picard iterations per window")->capture_default_str();
  c_solve->add_option("--window-fraction", solve.window_fraction, "Initial window as a fraction of T")
      ->capture_default_str();
  c_solve->add_option("--max-halvings", solve.max_halvings, "Window halving limit")->capture_default_str();
  add_regularity_options(c_solve, solve.reg);
  c_solve->add_flag("--regularity,!--no-regularity", solve.regularity, "Attach the regularity report");
  c_solve->add_option("--oracle", solve.oracle, "none or flow (Stratonovich flow, scalar drivers)")
      ->capture_default_str();
  c_solve->add_option("--out", solve.out, "Solution CSV")->capture_default_str();
  c_solve->add_option("--report", solve.report, "Report file (default: next to the solution CSV)");

  ProfileOptions prof;
  auto* c_prof = app.add_subcommand("profile", "Multi-seed, multi-resolution regularity profile of Brownian paths");
  c_prof->add_option("--seeds", prof.seeds, "Number of seeds")->capture_default_str();
  c_prof->add_option("--first-seed", prof.first_seed, "First seed")->capture_default_str();
  c_prof->add_option("--min-log2", prof.min_log2, "Smallest log2 N")->capture_default_str();
  c_prof->add_option("--max-log2", prof.max_log2, "Largest log2 N")->capture_default_str();
  c_prof->add_option("--alpha", prof.alpha, "Smoothness alpha")->capture_default_str();
  c_prof->add_option("--beta", prof.beta, "Orlicz exponent beta")->capture_default_str();
  c_prof->add_option("--q", prof.q, "Fine indices q")->capture_default_str();
  c_prof->add_option("--horizon", prof.horizon, "Time horizon T")->capture_default_str();
  c_prof->add_option("--threads", prof.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  c_prof->add_option("--csv", prof.csv, "Per-seed table")->capture_default_str();
  c_prof->add_option("--report", prof.report, "Report file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c_sim->parsed()) return cmd_simulate(sim, out, err);
    if (c_norm->parsed()) return cmd_norm(norm, out, err);
    if (c_lift->parsed()) return cmd_lift(lift, out, err);
    if (c_int->parsed()) return cmd_integrate(integ, out, err);
    if (c_solve->parsed()) return cmd_solve(solve, out, err);
    if (c_prof->parsed()) return cmd_profile(prof, out, err);
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}

}  // namespace bor::cli
