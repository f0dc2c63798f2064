#pragma once

#include "plateau/solver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace plateau {

struct ExportMeta {
  std::string config_json;  // echoed into meta.json
  std::vector<StageRecord> stages;
  std::string status = "converged";
};

/// One row per unknown: x1,x2[,x3],u,kappa_min,kappa_max,S1,nu_up.
std::string solution_csv(const GridSolution& sol);

/// Deterministic report document (no timestamps).
std::string report_json(const GridSolution& sol, const EstimateReport& report,
                        const ExportMeta& meta);

/// Hex FNV-1a digest of a config document.
std::string run_id(const std::string& config_json);

/// Writes solution.csv, report.json and meta.json into `dir`, creating it.
/// Throws PreconditionError on an empty discretization and
/// std::runtime_error with the path on I/O failure.
void export_solution(const GridSolution& sol, const EstimateReport& report,
                     const std::filesystem::path& dir, const ExportMeta& meta = {});

/// Human-readable summary of an exported run directory.
std::string summarize_run(const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace plateau
