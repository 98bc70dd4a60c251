#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conedesc/log.hpp"
#include "conedesc/problem.hpp"
#include "conedesc/runner.hpp"

namespace {

struct AnalysisArgs {
  std::string problem;
  std::string out = "./out";
  std::optional<double> tol_crit;
  std::optional<double> tol_haus;
  std::optional<double> tol_env;
  std::optional<std::uint64_t> seed;
  std::string format = "both";
};

void add_analysis_options(CLI::App* cmd, AnalysisArgs& args) {
  cmd->add_option("--problem", args.problem, "problem file (JSON)")->required();
  cmd->add_option("--out", args.out, "output directory")->capture_default_str();
  cmd->add_option("--tol-crit", args.tol_crit, "criticality tolerance override");
  cmd->add_option("--tol-haus", args.tol_haus, "Hausdorff deficit tolerance override");
  cmd->add_option("--tol-env", args.tol_env, "envelope gap tolerance override");
  cmd->add_option("--seed", args.seed, "random seed override");
  cmd->add_option("--format", args.format, "artifact format")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
}

int run_subcommand(conedesc::Subcommand sub, const AnalysisArgs& args) {
  using namespace conedesc;
  ProblemSpec spec = [&] {
    try {
      return load_problem(args.problem);
    } catch (const LoadError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      std::exit(1);
    }
  }();
  RunOptions opts;
  opts.out_dir = args.out;
  opts.tol_crit = args.tol_crit;
  opts.tol_haus = args.tol_haus;
  opts.tol_env = args.tol_env;
  opts.seed = args.seed;
  if (args.format == "csv")
    opts.format = OutputFormat::csv;
  else if (args.format == "json")
    opts.format = OutputFormat::json;
  else
    opts.format = OutputFormat::both;

  const RunResult result = run_analysis(spec, sub, opts);
  if (result.exit_code == 0) {
    for (const std::string& p : result.csv_paths) std::printf("wrote %s\n", p.c_str());
    if (!result.json_path.empty()) std::printf("wrote %s\n", result.json_path.c_str());
  } else {
    std::fprintf(stderr, "error: %s\n", result.summary.c_str());
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cone-order steepest descent and envelope regularity toolkit"};
  app.require_subcommand(1);

  AnalysisArgs solve_args, reg_args, scan_args, probe_args;
  CLI::App* solve = app.add_subcommand("solve", "descend to a cone-critical point");
  add_analysis_options(solve, solve_args);
  CLI::App* reg = app.add_subcommand("regularity", "semicontinuity and regularity analysis");
  add_analysis_options(reg, reg_args);
  CLI::App* scan = app.add_subcommand("gauge-scan", "variational gauge over a parameter grid");
  add_analysis_options(scan, scan_args);
  CLI::App* probe =
      app.add_subcommand("probe-continuity", "empirical modulus of the descent map");
  add_analysis_options(probe, probe_args);

  std::string dump_dir;
  CLI::App* cat = app.add_subcommand("catalog", "list bundled fixtures");
  cat->add_option("--dump", dump_dir, "write fixture problem files to this directory");

  CLI11_PARSE(app, argc, argv);

  using conedesc::Subcommand;
  if (solve->parsed()) return run_subcommand(Subcommand::solve, solve_args);
  if (reg->parsed()) return run_subcommand(Subcommand::regularity, reg_args);
  if (scan->parsed()) return run_subcommand(Subcommand::gauge_scan, scan_args);
  if (probe->parsed()) return run_subcommand(Subcommand::probe_continuity, probe_args);

  if (cat->parsed()) {
    for (const conedesc::CatalogEntry& entry : conedesc::catalog())
      std::printf("%-22s %s\n", entry.name.c_str(), entry.description.c_str());
    if (!dump_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dump_dir, ec);
      if (ec) {
        std::fprintf(stderr, "error: cannot create %s\n", dump_dir.c_str());
        return 1;
      }
      for (const conedesc::CatalogEntry& entry : conedesc::catalog()) {
        const std::string path = dump_dir + "/" + entry.name + ".json";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
          std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
          return 1;
        }
        out << conedesc::serialize_problem(entry.spec);
        std::printf("wrote %s\n", path.c_str());
      }
    }
    return 0;
  }
  return 0;
}
