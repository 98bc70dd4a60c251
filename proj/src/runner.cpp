#include "conedesc/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "conedesc/log.hpp"

namespace conedesc {

using nlohmann::json;
namespace fs = std::filesystem;

Subcommand subcommand_from_string(const std::string& s) {
  if (s == "solve") return Subcommand::solve;
  if (s == "regularity") return Subcommand::regularity;
  if (s == "gauge-scan") return Subcommand::gauge_scan;
  if (s == "probe-continuity") return Subcommand::probe_continuity;
  throw std::invalid_argument("unknown subcommand: " + s);
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::solve: return "solve";
    case Subcommand::regularity: return "regularity";
    case Subcommand::gauge_scan: return "gauge-scan";
    case Subcommand::probe_continuity: return "probe-continuity";
  }
  return "?";
}

namespace {

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// One CSV artifact: header row, then rows of prefix (run_id, op, digest),
// numeric payload, and a trailing wall_ms column. LF endings.
class CsvWriter {
 public:
  CsvWriter(std::string path, const std::string& run_id, const std::string& digest,
            const std::vector<std::string>& columns)
      : path_(std::move(path)), run_id_(run_id), digest_(digest) {
    out_.open(path_, std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open output file: " + path_);
    out_ << "run_id,op,digest";
    for (const std::string& c : columns) out_ << "," << c;
    out_ << ",wall_ms\n";
  }

  void row(const std::string& op, const std::vector<double>& values, double wall_ms) {
    out_ << run_id_ << "," << op << "," << digest_;
    for (double v : values) out_ << "," << fmt_num(v);
    out_ << "," << fmt_num(wall_ms) << "\n";
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string run_id_;
  std::string digest_;
  std::ofstream out_;
};

std::vector<Vec> effective_probes(const ProblemSpec& spec) {
  if (!spec.analysis.probes.empty()) return spec.analysis.probes;
  return default_probe_directions(spec.space.m, 8);
}

std::vector<SequenceSpec> effective_sequences(const ProblemSpec& spec) {
  const SequenceDefaults& sq = spec.analysis.seq;
  return default_sequence_specs(spec.cone_family.domain(), sq.count, sq.length, sq.gamma,
                                sq.r0);
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

RunResult run_analysis(const ProblemSpec& spec_in, Subcommand sub, const RunOptions& opts) {
  ProblemSpec spec = spec_in;
  if (opts.tol_crit) spec.analysis.tol_crit = *opts.tol_crit;
  if (opts.tol_haus) spec.analysis.tol_haus = *opts.tol_haus;
  if (opts.tol_env) spec.analysis.tol_env = *opts.tol_env;
  if (opts.seed) spec.analysis.seed = *opts.seed;

  RunResult rr;
  const std::string serialized = serialize_problem(spec);
  const std::string digest = hex16(
      fnv1a(serialized + "|" + to_string(sub) + "|" + std::to_string(spec.analysis.seed)));
  const std::string run_id = to_string(sub) + "-" + digest.substr(0, 8);
  const bool want_csv = opts.format != OutputFormat::json;
  const bool want_json = opts.format != OutputFormat::csv;

  json summary;
  summary["subcommand"] = to_string(sub);
  summary["run_id"] = run_id;
  summary["digest"] = digest;
  summary["seed"] = spec.analysis.seed;

  const Clock::time_point start = Clock::now();
  try {
    fs::create_directories(opts.out_dir);
    const std::string stem = opts.out_dir + "/" + to_string(sub);

    const FiberFamily& family = spec.cone_family;
    const ObjectiveFamily& obj = spec.objective;
    const AnalysisParams& an = spec.analysis;

    switch (sub) {
      case Subcommand::solve: {
        const IterationTrace trace =
            run_descent(family, an.a0, obj, an.s0, an.alpha0, an.line_search, an.tol_crit,
                        an.max_iterations, an.gap_tol);
        if (want_csv) {
          std::vector<std::string> cols = {"iter"};
          for (int i = 0; i < spec.space.n; ++i) cols.push_back("alpha_" + std::to_string(i));
          for (int i = 0; i < spec.space.n; ++i) cols.push_back("nu_" + std::to_string(i));
          cols.push_back("m");
          cols.push_back("t");
          CsvWriter csv(stem + "_trace.csv", run_id, digest, cols);
          for (size_t k = 0; k < trace.records.size(); ++k) {
            const IterationRecord& rec = trace.records[k];
            std::vector<double> vals = {static_cast<double>(k)};
            for (int i = 0; i < rec.alpha.size(); ++i) vals.push_back(rec.alpha(i));
            for (int i = 0; i < rec.nu.size(); ++i) vals.push_back(rec.nu(i));
            vals.push_back(rec.m_value);
            vals.push_back(rec.step);
            csv.row("solve", vals, elapsed_ms(start));
          }
          rr.csv_paths.push_back(csv.path());
        }
        const IterationRecord& last = trace.records.back();
        summary["status"] = to_string(trace.status);
        summary["iterations"] = trace.iterations;
        summary["final_alpha"] = vec_json(trace.final_alpha);
        summary["final_m"] = last.m_value;
        summary["final_nu_norm"] = last.nu.norm();
        if (trace.status == DescentStatus::line_search_failed ||
            trace.status == DescentStatus::subproblem_failed)
          rr.exit_code = 2;
        break;
      }
      case Subcommand::regularity: {
        RegularityTolerances tols{an.tol_haus, an.tol_env, an.gap_tol};
        const std::vector<SequenceSpec> specs = effective_sequences(spec);
        const std::vector<Vec> probes = effective_probes(spec);
        const RegularityReport report =
            analyze_regularity(family, an.a0, specs, probes, tols);
        const FiberConditionReport conditions = check_fiber_conditions(
            family, domain_grid(family.domain(), an.grid_points_per_axis));
        if (want_csv) {
          std::vector<std::string> seq_cols = {"seq_index"};
          for (int i = 0; i < spec.space.d; ++i) seq_cols.push_back("dir_" + std::to_string(i));
          seq_cols.push_back("lsc_deficit");
          seq_cols.push_back("usc_deficit");
          CsvWriter seq_csv(stem + "_sequences.csv", run_id, digest, seq_cols);
          for (const SequenceDiagnostic& d : report.sequences) {
            std::vector<double> vals = {static_cast<double>(d.spec_index)};
            for (int i = 0; i < d.direction.size(); ++i) vals.push_back(d.direction(i));
            vals.push_back(d.lsc_deficit);
            vals.push_back(d.usc_deficit);
            seq_csv.row("sequence", vals, elapsed_ms(start));
          }
          rr.csv_paths.push_back(seq_csv.path());

          std::vector<std::string> probe_cols = {"probe_index"};
          for (int i = 0; i < spec.space.m; ++i) probe_cols.push_back("x_" + std::to_string(i));
          probe_cols.push_back("liminf");
          probe_cols.push_back("value");
          probe_cols.push_back("limsup");
          CsvWriter probe_csv(stem + "_probes.csv", run_id, digest, probe_cols);
          for (size_t k = 0; k < report.probes.size(); ++k) {
            const ProbeDiagnostic& d = report.probes[k];
            std::vector<double> vals = {static_cast<double>(k)};
            for (int i = 0; i < d.x.size(); ++i) vals.push_back(d.x(i));
            vals.push_back(d.liminf_est);
            vals.push_back(d.value);
            vals.push_back(d.limsup_est);
            probe_csv.row("probe", vals, elapsed_ms(start));
          }
          rr.csv_paths.push_back(probe_csv.path());
        }
        summary["verdict"] = to_string(report.verdict);
        summary["lsc_deficit"] = report.lsc_deficit;
        summary["usc_deficit"] = report.usc_deficit;
        summary["envelope_lsc_gap"] = report.envelope_lsc_gap;
        summary["envelope_usc_gap"] = report.envelope_usc_gap;
        summary["c_cloud_regular"] = report.c_cloud_regular;
        summary["c1_cloud_regular"] = report.c1_cloud_regular;
        summary["c2_cloud_regular"] = report.c2_cloud_regular;
        summary["resolution_note"] = report.resolution_note;
        summary["fiber_conditions_pass"] = conditions.pass;
        summary["max_generator_norm"] = conditions.max_generator_norm;
        summary["fiber_condition_violations"] = conditions.violations;
        break;
      }
      case Subcommand::gauge_scan: {
        const std::vector<Vec> probes = effective_probes(spec);
        const int points = an.scan_points;
        const Box& box = family.domain();
        if (want_csv) {
          std::vector<std::string> cols = {"index"};
          for (int i = 0; i < spec.space.d; ++i) cols.push_back("a_" + std::to_string(i));
          for (size_t p = 0; p < probes.size(); ++p) cols.push_back("g_" + std::to_string(p));
          CsvWriter csv(stem + ".csv", run_id, digest, cols);

          std::vector<double> prev(probes.size(), 0.0);
          std::vector<double> max_jump(probes.size(), 0.0);
          for (int k = 0; k < points; ++k) {
            Vec a = an.a0;
            const double t = static_cast<double>(k) / static_cast<double>(points - 1);
            a(0) = box.lo(0) + t * (box.hi(0) - box.lo(0));
            std::vector<double> vals = {static_cast<double>(k)};
            for (int i = 0; i < a.size(); ++i) vals.push_back(a(i));
            for (size_t p = 0; p < probes.size(); ++p) {
              const double g = variational_gauge(family, a, probes[p]);
              if (k > 0) max_jump[p] = std::max(max_jump[p], std::abs(g - prev[p]));
              prev[p] = g;
              vals.push_back(g);
            }
            csv.row("gauge", vals, elapsed_ms(start));
          }
          rr.csv_paths.push_back(csv.path());
          summary["max_successive_jump"] = max_jump;
        } else {
          std::vector<double> prev(probes.size(), 0.0);
          std::vector<double> max_jump(probes.size(), 0.0);
          for (int k = 0; k < points; ++k) {
            Vec a = an.a0;
            const double t = static_cast<double>(k) / static_cast<double>(points - 1);
            a(0) = box.lo(0) + t * (box.hi(0) - box.lo(0));
            for (size_t p = 0; p < probes.size(); ++p) {
              const double g = variational_gauge(family, a, probes[p]);
              if (k > 0) max_jump[p] = std::max(max_jump[p], std::abs(g - prev[p]));
              prev[p] = g;
            }
          }
          summary["max_successive_jump"] = max_jump;
        }
        summary["scan_points"] = points;
        summary["grid_step"] = (box.hi(0) - box.lo(0)) / static_cast<double>(points - 1);
        break;
      }
      case Subcommand::probe_continuity: {
        const std::vector<ContinuityRow> rows =
            continuity_probe(family, an.a0, obj, an.s0, an.alpha0, an.radii, an.gap_tol);
        if (want_csv) {
          CsvWriter csv(stem + ".csv", run_id, digest,
                        {"index", "radius", "dnu_max", "dm_max", "skipped"});
          for (size_t k = 0; k < rows.size(); ++k) {
            const ContinuityRow& r = rows[k];
            csv.row("continuity",
                    {static_cast<double>(k), r.radius, r.max_dnu, r.max_dm,
                     static_cast<double>(r.skipped)},
                    elapsed_ms(start));
          }
          rr.csv_paths.push_back(csv.path());
        }
        json table = json::array();
        for (const ContinuityRow& r : rows)
          table.push_back({{"radius", r.radius}, {"dnu_max", r.max_dnu},
                           {"dm_max", r.max_dm}, {"skipped", r.skipped}});
        summary["modulus_table"] = table;
        summary["final_dnu"] = rows.back().max_dnu;
        summary["final_dm"] = rows.back().max_dm;
        break;
      }
    }
    summary["wall_ms"] = elapsed_ms(start);
    summary["csv_files"] = rr.csv_paths;

    if (want_json) {
      rr.json_path = opts.out_dir + "/" + to_string(sub) + "_summary.json";
      std::ofstream out(rr.json_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + rr.json_path);
      out << summary.dump(2) << "\n";
    }
    rr.summary = summary.dump(2);
  } catch (const std::invalid_argument& e) {
    log_error(std::string("input error: ") + e.what());
    rr.exit_code = 1;
    rr.summary = std::string("input error: ") + e.what();
  } catch (const std::exception& e) {
    log_error(std::string("analysis failed: ") + e.what());
    rr.exit_code = 2;
    rr.summary = std::string("analysis failed: ") + e.what();
  }
  return rr;
}

}  // namespace conedesc
