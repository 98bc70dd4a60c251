#pragma once

#include <optional>
#include <string>

#include "conedesc/problem.hpp"

namespace conedesc {

enum class Subcommand { solve, regularity, gauge_scan, probe_continuity };

Subcommand subcommand_from_string(const std::string& s);
std::string to_string(Subcommand s);

enum class OutputFormat { csv, json, both };

struct RunOptions {
  std::string out_dir = "./out";
  std::optional<double> tol_crit;
  std::optional<double> tol_haus;
  std::optional<double> tol_env;
  std::optional<std::uint64_t> seed;
  OutputFormat format = OutputFormat::both;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 input error, 2 analysis failure
  std::vector<std::string> csv_paths;
  std::string json_path;
  std::string summary;  // the JSON summary text
};

/// Execute one analysis and write its artifacts under out_dir. Rows are
/// deterministic for a fixed spec + seed (wall-time column excluded).
RunResult run_analysis(const ProblemSpec& spec, Subcommand sub,
                       const RunOptions& opts);

}  // namespace conedesc
