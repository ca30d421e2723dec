#pragma once

#include <filesystem>

#include "besovlab/harness.hpp"

namespace besovlab {

/// Write <experiment>__<hash>.json/.csv (and .svg when requested) plus the
/// effective-config manifest.toml into dir. Re-running the sweep from that
/// manifest reproduces every file byte for byte.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                  bool with_svg);

/// Reload a report previously written by write_report.
ExperimentReport read_report(const std::filesystem::path& json_path);

/// Re-render CSV/SVG from every report JSON found in dir. Returns the number
/// of reports processed.
int rerender_reports(const std::filesystem::path& dir);

/// The tidy CSV rendering (table,row,field,value) used for the .csv output.
std::string report_to_csv(const ExperimentReport& report);

/// Log-log summary plot for the report's main sweep.
std::string report_to_svg(const ExperimentReport& report);

}  // namespace besovlab
