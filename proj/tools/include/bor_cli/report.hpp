#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bor/besov_orlicz.hpp"
#include "bor/rde.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sewing.hpp"

namespace bor::cli {

using nlohmann::json;

/// Library version embedded in every report.
[[nodiscard]] std::string version();

/// Finite doubles as numbers, +inf as the string "inf" (JSON has no infinity).
[[nodiscard]] json number(double v);
/// Inverse of number(): accepts numbers and the strings "inf" / "infinity".
[[nodiscard]] double parse_number(const std::string& text);

[[nodiscard]] json to_json(const RegularityParams& p);
[[nodiscard]] json to_json(const NormReport& r);
[[nodiscard]] json to_json(const ChenReport& r);
/// Summary of a sewing run; the integral samples are included when with_samples is set.
[[nodiscard]] json to_json(const SewingResult& r, bool with_samples);
[[nodiscard]] json to_json(const RdeSolution& s);

/// Top-level report {config, version, results, diagnostics}.
[[nodiscard]] json make_report(json config, json results, json diagnostics);

/// Relative paths are placed under $BOR_OUTPUT_DIR when that variable is set.
[[nodiscard]] std::filesystem::path resolve_output(const std::string& file);

/// Writes to a temporary sibling and renames it over the target. Throws std::ios_base::failure.
void write_atomic(const std::filesystem::path& target, const std::string& contents);

}  // namespace bor::cli
