#include "bor_cli/report.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ios>

#include <unistd.h>

#include "bor/error.hpp"

namespace bor::cli {

std::string version() { return BOR_VERSION; }

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double parse_number(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw FormatError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw FormatError("not a number: '" + text + "'");
  return v;
}

json to_json(const RegularityParams& p) { return {{"alpha", p.alpha}, {"beta", p.beta}, {"q", number(p.q)}}; }

json to_json(const NormReport& r) {
  json terms = json::array();
  for (double t : r.dyadic_terms) terms.push_back(number(t));
  json j{{"params", to_json(r.params)},
         {"dyadic_terms", terms},
         {"seminorm_dyadic", number(r.seminorm_dyadic)},
         {"sup_norm", number(r.sup_norm)}};
  if (r.seminorm_quadrature) j["seminorm_quadrature"] = number(*r.seminorm_quadrature);
  return j;
}

json to_json(const ChenReport& r) {
  return {{"max_defect", number(r.max_defect)},
          {"tolerance", number(r.tolerance)},
          {"triples_checked", r.triples_checked},
          {"ok", r.ok()}};
}

json to_json(const SewingResult& r, bool with_samples) {
  json hist = json::array();
  for (double h : r.cauchy_history) hist.push_back(number(h));
  const auto last = r.integral[r.integral.steps()];
  json j{{"levels_used", r.levels_used},
         {"cauchy_history", hist},
         {"monotonicity_violations", r.monotonicity_violations},
         {"converged", r.converged},
         {"final_value", std::vector<double>(last.begin(), last.end())}};
  if (with_samples) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.integral.points(); ++i) {
      const auto v = r.integral[i];
      rows.push_back(std::vector<double>(v.begin(), v.end()));
    }
    j["integral"] = std::move(rows);
  }
  return j;
}

json to_json(const RdeSolution& s) {
  json windows = json::array();
  for (const auto& [a, b] : s.windows) windows.push_back({a, b});
  const auto last = s.y[s.y.steps()];
  json j{{"converged", s.converged},
         {"residual", number(s.residual)},
         {"fixed_point_defect", number(s.fixed_point_defect)},
         {"picard_iters_per_window", s.picard_iters_per_window},
         {"windows", windows},
         {"halvings", s.halvings},
         {"final_value", std::vector<double>(last.begin(), last.end())}};
  if (s.metric_distance) j["metric_distance"] = number(*s.metric_distance);
  if (s.regularity) {
    j["regularity"] = {{"path", to_json(s.regularity->path)}, {"remainder", to_json(s.regularity->remainder)}};
  }
  return j;
}

json make_report(json config, json results, json diagnostics) {
  return {{"config", std::move(config)},
          {"version", version()},
          {"results", std::move(results)},
          {"diagnostics", std::move(diagnostics)}};
}

std::filesystem::path resolve_output(const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BOR_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void write_atomic(const std::filesystem::path& target, const std::string& contents) {
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) throw std::ios_base::failure("cannot create directory " + target.parent_path().string());
  }
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::ios_base::failure("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::ios_base::failure("cannot move output into place at " + target.string());
  }
}

}  // namespace bor::cli
