#pragma once

#include "esc/scenario.hpp"
#include "esc/standard.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace esc::io {

// The four on-disk formats are the library's public data contract: CSV
// for tabular data (capacity series, reports), JSON for structured
// configuration (matrix, scenario). Field names and numeric rendering
// are fixed so outputs are byte-comparable across runs.

inline constexpr std::string_view series_csv_header = "timestamp,source_id,capacity,unit";
inline constexpr std::string_view report_csv_header =
    "t,M_amu,A_total_gwy,dM_dt_amu_per_y,overall_growth,violations";

/// Decimal rendering used in every file this module writes: 12
/// significant digits, shortest general form, ties to even.
std::string render_number(double value);

/// Capacity series CSV: header `timestamp,source_id,capacity,unit`, rows
/// strictly increasing in time per source, one constant unit per source.
/// Every violation is reported with its 1-based line number.
std::map<std::string, CapacitySeries> parse_series_csv(std::string_view text);
std::map<std::string, CapacitySeries> load_series(const std::filesystem::path& path);
std::string series_to_csv(const std::map<std::string, CapacitySeries>& series);
void write_series(const std::map<std::string, CapacitySeries>& series,
                  const std::filesystem::path& path);

/// Matrix configuration JSON:
///   { "sources": [ { "id", "label", "c_amu_per_gwy", "window_years" } ] }
/// Unknown fields, duplicate ids, c < 0 and window <= 0 are rejected.
std::vector<SourceSpec> parse_matrix_config(std::string_view json_text);
std::vector<SourceSpec> load_matrix_config(const std::filesystem::path& path);

/// Scenario JSON. Required: "start" (ISO 8601 UTC), "horizon_years",
/// "eval_step_years", "sample_step_years", "initial". Optional: "events",
/// "derivative_step_years". Durations are decimal years. Unknown fields
/// are rejected. See README for the full field list.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

enum class ReportFormat { csv, json };

/// CSV report, one row per emitted evaluation. Rows where the assessment
/// is absent leave the last three columns empty.
std::string report_to_csv(const SimulationResult& result);
/// JSON report mirroring SimulationResult, byte-deterministic.
std::string report_to_json(const SimulationResult& result);
void write_report(const SimulationResult& result, const std::filesystem::path& path,
                  ReportFormat format);

/// Inverse of report_to_json (numbers carry the 12-digit rendering).
SimulationResult parse_report_json(std::string_view text);
SimulationResult load_report_json(const std::filesystem::path& path);

/// Single-value JSON renderings shared with the CLI.
std::string snapshot_to_json(const MonetarySnapshot& snapshot);
std::string assessment_to_json(const GrowthAssessment& assessment);

} // namespace esc::io
