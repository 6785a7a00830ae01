#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bor/path_gen.hpp"

namespace bor::cli {

struct DriverOptions {
  std::string kind = "brownian";
  std::size_t dimension = 1;
  std::size_t steps = 1024;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  double hurst = 0.5;
  std::string method = "circulant";
  std::string expression = "linear";

  [[nodiscard]] DriverSpec spec() const;
};

struct RegularityOptions {
  double alpha = 0.5;
  double beta = 2.0;
  std::string q = "inf";
};

struct SimulateOptions {
  DriverOptions driver;
  std::string out = "path.csv";
  std::string report;
};

struct NormOptions {
  std::string input;
  RegularityOptions reg;
  bool quadrature = false;
  std::string report;
};

struct LiftOptions {
  std::string input;
  std::string mode = "auto";
  std::string storage = "auto";
  RegularityOptions reg{0.45, 2.0, "inf"};
  std::string area_out;
  std::string report;
};

struct IntegrateOptions {
  std::string input;
  std::string mode = "auto";
  std::string integrand = "identity";
  double tol = 1e-12;
  std::string out = "integral.csv";
  std::string report;
};

struct SolveOptions {
  std::string input;
  DriverOptions driver;
  std::string mode = "auto";
  std::string field = "sin";
  std::vector<double> y0{0.0};
  std::string scheme = "picard";
  double tol = 1e-10;
  std::size_t max_iter = 200;
  double window_fraction = 1.0;
  std::size_t max_halvings = 10;
  RegularityOptions reg{0.45, 2.0, "inf"};
  bool regularity = true;
  std::string oracle = "none";
  std::string out = "solution.csv";
  std::string report;
};

struct ProfileOptions {
  std::size_t seeds = 20;
  std::uint64_t first_seed = 0;
  std::size_t min_log2 = 10;
  std::size_t max_log2 = 14;
  double alpha = 0.5;
  double beta = 2.0;
  std::vector<std::string> q{"1", "2", "inf"};
  double horizon = 1.0;
  std::size_t threads = 0;
  std::string csv = "profile.csv";
  std::string report;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err);
int cmd_norm(const NormOptions& o, std::ostream& out, std::ostream& err);
int cmd_lift(const LiftOptions& o, std::ostream& out, std::ostream& err);
int cmd_integrate(const IntegrateOptions& o, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err);
int cmd_profile(const ProfileOptions& o, std::ostream& out, std::ostream& err);

}  // namespace bor::cli
