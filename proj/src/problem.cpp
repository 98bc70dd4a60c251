#include "conedesc/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conedesc {

using nlohmann::json;

LoadError::LoadError(LoadErrorCode code, std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::ostringstream oss;
        oss << "problem load failed (code " << static_cast<int>(code) << ")";
        for (const std::string& v : violations) oss << "\n  " << v;
        return oss.str();
      }()),
      code_(code),
      violations_(std::move(violations)) {}

namespace {

// Collects violations during the schema walk; schema faults take precedence
// over cross-section dimension faults when choosing the error code.
struct Validator {
  std::vector<std::string> schema;
  std::vector<std::string> dims;

  void schema_err(const std::string& path, const std::string& msg) {
    schema.push_back(path + ": " + msg);
  }
  void dim_err(const std::string& path, const std::string& msg) {
    dims.push_back(path + ": " + msg);
  }
  void throw_if_bad() const {
    if (!schema.empty()) {
      std::vector<std::string> all = schema;
      all.insert(all.end(), dims.begin(), dims.end());
      throw LoadError(LoadErrorCode::schema_violation, all);
    }
    if (!dims.empty()) throw LoadError(LoadErrorCode::dimension_mismatch, dims);
  }
};

bool expect_keys(Validator& v, const json& j, const std::string& path,
                 const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) {
    v.schema_err(path, "expected an object");
    return false;
  }
  bool ok = true;
  for (const std::string& key : required) {
    if (!j.contains(key)) {
      v.schema_err(path + "." + key, "missing required key");
      ok = false;
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      v.schema_err(path + "." + key, "unknown key");
      ok = false;
    }
  }
  return ok;
}

double get_num(Validator& v, const json& j, const std::string& path, double fallback = 0.0) {
  if (!j.is_number()) {
    v.schema_err(path, "expected a number");
    return fallback;
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    v.schema_err(path, "expected a finite number");
    return fallback;
  }
  return x;
}

int get_int(Validator& v, const json& j, const std::string& path, int fallback = 0) {
  if (!j.is_number_integer()) {
    v.schema_err(path, "expected an integer");
    return fallback;
  }
  return j.get<int>();
}

Vec get_vec(Validator& v, const json& j, const std::string& path, int expected = -1) {
  if (!j.is_array()) {
    v.schema_err(path, "expected an array of numbers");
    return Vec();
  }
  Vec out(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        get_num(v, j[i], path + "[" + std::to_string(i) + "]");
  if (expected >= 0 && static_cast<int>(j.size()) != expected)
    v.schema_err(path, "expected " + std::to_string(expected) + " entries, got " +
                           std::to_string(j.size()));
  return out;
}

Mat get_mat(Validator& v, const json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array() || j.empty()) {
    v.schema_err(path, "expected a nonempty array of rows");
    return Mat();
  }
  const size_t ncols = j[0].is_array() ? j[0].size() : 0;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(j.size()),
                      static_cast<Eigen::Index>(ncols));
  for (size_t i = 0; i < j.size(); ++i) {
    const Vec row = get_vec(v, j[i], path + "[" + std::to_string(i) + "]",
                            static_cast<int>(ncols));
    if (row.size() == static_cast<Eigen::Index>(ncols))
      out.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  if (rows >= 0 && out.rows() != rows)
    v.dim_err(path, "expected " + std::to_string(rows) + " rows, got " +
                        std::to_string(out.rows()));
  if (cols >= 0 && out.cols() != cols)
    v.dim_err(path, "expected " + std::to_string(cols) + " columns, got " +
                        std::to_string(out.cols()));
  return out;
}

// Generator lists are validated entry by entry against the declared value
// dimension; a wrong-length generator is a schema violation at its path.
std::vector<Vec> get_points(Validator& v, const json& j, const std::string& path, int m) {
  std::vector<Vec> pts;
  if (!j.is_array() || j.empty()) {
    v.schema_err(path, "expected a nonempty array of vectors");
    return pts;
  }
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Vec x = get_vec(v, j[i], p);
    if (x.size() != m)
      v.schema_err(p, "generator has dimension " + std::to_string(x.size()) +
                          ", value space has dimension " + std::to_string(m));
    pts.push_back(std::move(x));
  }
  return pts;
}

SpaceDims parse_space(Validator& v, const json& j) {
  SpaceDims dims;
  if (!expect_keys(v, j, "space", {"n", "m", "d", "q"})) return dims;
  dims.n = get_int(v, j["n"], "space.n");
  dims.m = get_int(v, j["m"], "space.m");
  dims.d = get_int(v, j["d"], "space.d");
  dims.q = get_int(v, j["q"], "space.q");
  if (dims.n < 1) v.schema_err("space.n", "must be >= 1");
  if (dims.m < 1) v.schema_err("space.m", "must be >= 1");
  if (dims.d < 1) v.schema_err("space.d", "must be >= 1");
  if (dims.q < 0) v.schema_err("space.q", "must be >= 0");
  return dims;
}

GeneratorSet make_set(Validator& v, std::vector<Vec> pts, const std::string& path) {
  try {
    return GeneratorSet(std::move(pts));
  } catch (const std::exception& e) {
    v.schema_err(path, e.what());
    return orthant_generators(1);
  }
}

std::optional<FiberFamily> parse_cone_family(Validator& v, const json& j,
                                             const SpaceDims& dims) {
  static const std::vector<std::string> optional_keys = {
      "rate", "breakpoint", "base2", "extra", "nodes", "sets"};
  if (!expect_keys(v, j, "cone_family", {"kind", "domain", "bound"},
                   [&] {
                     std::vector<std::string> opt = optional_keys;
                     opt.push_back("base");
                     return opt;
                   }()))
    return std::nullopt;

  FiberKind kind = FiberKind::constant;
  if (!j["kind"].is_string()) {
    v.schema_err("cone_family.kind", "expected a string");
    return std::nullopt;
  }
  try {
    kind = fiber_kind_from_string(j["kind"].get<std::string>());
  } catch (const std::exception& e) {
    v.schema_err("cone_family.kind", e.what());
    return std::nullopt;
  }

  Box domain;
  if (expect_keys(v, j["domain"], "cone_family.domain", {"lo", "hi"})) {
    domain.lo = get_vec(v, j["domain"]["lo"], "cone_family.domain.lo");
    domain.hi = get_vec(v, j["domain"]["hi"], "cone_family.domain.hi");
    if (domain.lo.size() != dims.d)
      v.dim_err("cone_family.domain.lo", "domain dimension must equal space.d");
    if (domain.hi.size() != dims.d)
      v.dim_err("cone_family.domain.hi", "domain dimension must equal space.d");
  }
  const double bound = get_num(v, j["bound"], "cone_family.bound");
  if (!(bound > 0.0)) v.schema_err("cone_family.bound", "must be positive");

  auto need = [&](const char* key) {
    if (!j.contains(key)) {
      v.schema_err(std::string("cone_family.") + key,
                   "missing key required by kind '" + to_string(kind) + "'");
      return false;
    }
    return true;
  };
  auto reject = [&](const char* key) {
    if (j.contains(key))
      v.schema_err(std::string("cone_family.") + key,
                   "key not allowed for kind '" + to_string(kind) + "'");
  };

  if (kind != FiberKind::table && !need("base")) return std::nullopt;
  if (kind != FiberKind::rotation) reject("rate");
  if (kind != FiberKind::jump && kind != FiberKind::interpolation) reject("base2");
  if (kind != FiberKind::pinch && kind != FiberKind::expand) reject("extra");
  if (kind != FiberKind::jump && kind != FiberKind::pinch && kind != FiberKind::expand)
    reject("breakpoint");
  if (kind != FiberKind::table) {
    reject("nodes");
    reject("sets");
  } else {
    reject("base");
  }

  try {
    switch (kind) {
      case FiberKind::constant: {
        GeneratorSet base = make_set(v, get_points(v, j["base"], "cone_family.base", dims.m),
                                     "cone_family.base");
        v.throw_if_bad();
        return FiberFamily::constant(std::move(base), domain, bound);
      }
      case FiberKind::rotation: {
        if (!need("rate")) return std::nullopt;
        const double rate = get_num(v, j["rate"], "cone_family.rate");
        if (dims.m != 2) v.dim_err("cone_family.kind", "rotation requires space.m == 2");
        GeneratorSet base = make_set(v, get_points(v, j["base"], "cone_family.base", dims.m),
                                     "cone_family.base");
        v.throw_if_bad();
        return FiberFamily::rotation(std::move(base), rate, domain, bound);
      }
      case FiberKind::jump: {
        if (!need("base2") || !need("breakpoint")) return std::nullopt;
        const double breakpoint = get_num(v, j["breakpoint"], "cone_family.breakpoint");
        GeneratorSet base = make_set(v, get_points(v, j["base"], "cone_family.base", dims.m),
                                     "cone_family.base");
        GeneratorSet base2 = make_set(
            v, get_points(v, j["base2"], "cone_family.base2", dims.m), "cone_family.base2");
        v.throw_if_bad();
        return FiberFamily::jump(std::move(base), std::move(base2), breakpoint, domain, bound);
      }
      case FiberKind::pinch:
      case FiberKind::expand: {
        if (!need("extra") || !need("breakpoint")) return std::nullopt;
        const double breakpoint = get_num(v, j["breakpoint"], "cone_family.breakpoint");
        GeneratorSet base = make_set(v, get_points(v, j["base"], "cone_family.base", dims.m),
                                     "cone_family.base");
        std::vector<Vec> extra = get_points(v, j["extra"], "cone_family.extra", dims.m);
        v.throw_if_bad();
        return kind == FiberKind::pinch
                   ? FiberFamily::pinch(std::move(base), std::move(extra), breakpoint,
                                        domain, bound)
                   : FiberFamily::expand(std::move(base), std::move(extra), breakpoint,
                                         domain, bound);
      }
      case FiberKind::interpolation: {
        if (!need("base2")) return std::nullopt;
        GeneratorSet base = make_set(v, get_points(v, j["base"], "cone_family.base", dims.m),
                                     "cone_family.base");
        GeneratorSet base2 = make_set(
            v, get_points(v, j["base2"], "cone_family.base2", dims.m), "cone_family.base2");
        v.throw_if_bad();
        return FiberFamily::interpolation(std::move(base), std::move(base2), domain, bound);
      }
      case FiberKind::table: {
        if (!need("nodes") || !need("sets")) return std::nullopt;
        const Vec nodes = get_vec(v, j["nodes"], "cone_family.nodes");
        std::vector<GeneratorSet> sets;
        if (!j["sets"].is_array() || j["sets"].empty()) {
          v.schema_err("cone_family.sets", "expected a nonempty array of generator lists");
          v.throw_if_bad();
          return std::nullopt;
        }
        for (size_t i = 0; i < j["sets"].size(); ++i) {
          const std::string p = "cone_family.sets[" + std::to_string(i) + "]";
          sets.push_back(make_set(v, get_points(v, j["sets"][i], p, dims.m), p));
        }
        v.throw_if_bad();
        return FiberFamily::table(std::vector<double>(nodes.data(), nodes.data() + nodes.size()),
                                  std::move(sets), domain, bound);
      }
    }
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    v.schema_err("cone_family", e.what());
    v.throw_if_bad();
  }
  return std::nullopt;
}

QuadraticComponent parse_component(Validator& v, const json& j, const std::string& path,
                                   const SpaceDims& dims, bool allow_s) {
  QuadraticComponent c;
  c.s_shift = Mat();
  std::vector<std::string> optional = {"offset"};
  if (allow_s) optional.push_back("s_shift");
  if (!expect_keys(v, j, path, {"quad", "center"}, optional)) return c;
  c.quad = get_mat(v, j["quad"], path + ".quad", dims.n, dims.n);
  c.center = get_vec(v, j["center"], path + ".center", dims.n);
  if (j.contains("offset")) c.offset = get_num(v, j["offset"], path + ".offset");
  if (allow_s && j.contains("s_shift"))
    c.s_shift = get_mat(v, j["s_shift"], path + ".s_shift", dims.n, dims.q);
  return c;
}

std::optional<ObjectiveFamily> parse_objective(Validator& v, const json& j,
                                               const SpaceDims& dims) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    v.schema_err("objective", "expected an object with a string 'kind'");
    return std::nullopt;
  }
  ObjectiveKind kind;
  try {
    kind = objective_kind_from_string(j["kind"].get<std::string>());
  } catch (const std::exception& e) {
    v.schema_err("objective.kind", e.what());
    return std::nullopt;
  }

  try {
    switch (kind) {
      case ObjectiveKind::affine: {
        if (!expect_keys(v, j, "objective", {"kind", "matrix", "offset"}, {"s_matrices"}))
          return std::nullopt;
        Mat matrix = get_mat(v, j["matrix"], "objective.matrix", dims.m, dims.n);
        Vec offset = get_vec(v, j["offset"], "objective.offset", dims.m);
        std::vector<Mat> s_matrices;
        if (j.contains("s_matrices")) {
          if (!j["s_matrices"].is_array()) {
            v.schema_err("objective.s_matrices", "expected an array of matrices");
            return std::nullopt;
          }
          for (size_t k = 0; k < j["s_matrices"].size(); ++k)
            s_matrices.push_back(get_mat(v, j["s_matrices"][k],
                                         "objective.s_matrices[" + std::to_string(k) + "]",
                                         dims.m, dims.n));
        }
        if (static_cast<int>(s_matrices.size()) != dims.q)
          v.dim_err("objective.s_matrices", "need exactly space.q matrices");
        v.throw_if_bad();
        return ObjectiveFamily::affine(std::move(matrix), std::move(offset),
                                       std::move(s_matrices));
      }
      case ObjectiveKind::quadratic_vector: {
        if (!expect_keys(v, j, "objective", {"kind", "components"})) return std::nullopt;
        if (!j["components"].is_array() || j["components"].empty()) {
          v.schema_err("objective.components", "expected a nonempty array");
          return std::nullopt;
        }
        std::vector<QuadraticComponent> comps;
        for (size_t i = 0; i < j["components"].size(); ++i)
          comps.push_back(parse_component(v, j["components"][i],
                                          "objective.components[" + std::to_string(i) + "]",
                                          dims, /*allow_s=*/true));
        if (static_cast<int>(comps.size()) != dims.m)
          v.dim_err("objective.components", "need exactly space.m components");
        v.throw_if_bad();
        return ObjectiveFamily::quadratic(std::move(comps), dims.n, dims.q);
      }
      case ObjectiveKind::trig_vector: {
        if (!expect_keys(v, j, "objective", {"kind", "amplitude", "frequency", "phase"},
                         {"s_phase"}))
          return std::nullopt;
        Mat amplitude = get_mat(v, j["amplitude"], "objective.amplitude", dims.m, dims.n);
        Mat frequency = get_mat(v, j["frequency"], "objective.frequency", dims.m, dims.n);
        Mat phase = get_mat(v, j["phase"], "objective.phase", dims.m, dims.n);
        Mat s_phase;
        if (j.contains("s_phase"))
          s_phase = get_mat(v, j["s_phase"], "objective.s_phase", dims.m, dims.q);
        else if (dims.q > 0)
          v.dim_err("objective.s_phase", "required when space.q > 0");
        v.throw_if_bad();
        return ObjectiveFamily::trig(std::move(amplitude), std::move(frequency),
                                     std::move(phase), std::move(s_phase));
      }
      case ObjectiveKind::table_of_quadratics: {
        if (!expect_keys(v, j, "objective", {"kind", "s_nodes", "tables"}))
          return std::nullopt;
        if (dims.q != 1) v.dim_err("objective.kind", "table_of_quadratics requires space.q == 1");
        const Vec nodes = get_vec(v, j["s_nodes"], "objective.s_nodes");
        std::vector<std::vector<QuadraticComponent>> tables;
        if (!j["tables"].is_array() || j["tables"].empty()) {
          v.schema_err("objective.tables", "expected a nonempty array of component lists");
          return std::nullopt;
        }
        for (size_t t = 0; t < j["tables"].size(); ++t) {
          const std::string path = "objective.tables[" + std::to_string(t) + "]";
          if (!j["tables"][t].is_array() || j["tables"][t].empty()) {
            v.schema_err(path, "expected a nonempty array of components");
            continue;
          }
          std::vector<QuadraticComponent> comps;
          for (size_t i = 0; i < j["tables"][t].size(); ++i)
            comps.push_back(parse_component(v, j["tables"][t][i],
                                            path + "[" + std::to_string(i) + "]", dims,
                                            /*allow_s=*/false));
          if (static_cast<int>(comps.size()) != dims.m)
            v.dim_err(path, "need exactly space.m components");
          tables.push_back(std::move(comps));
        }
        v.throw_if_bad();
        return ObjectiveFamily::quadratic_table(
            std::vector<double>(nodes.data(), nodes.data() + nodes.size()),
            std::move(tables), dims.n);
      }
    }
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    v.schema_err("objective", e.what());
    v.throw_if_bad();
  }
  return std::nullopt;
}

AnalysisParams parse_analysis(Validator& v, const json& j, const SpaceDims& dims,
                              double bound, double domain_scale) {
  AnalysisParams out;
  expect_keys(v, j, "analysis", {"a0", "alpha0"},
              {"tol_crit", "tol_haus", "tol_env", "gap_tol", "sequences", "probes",
               "seed", "s0", "radii", "line_search", "max_iterations", "scan_points",
               "grid_points_per_axis"});
  if (!j.is_object()) return out;

  if (j.contains("a0")) {
    out.a0 = get_vec(v, j["a0"], "analysis.a0");
    if (out.a0.size() != dims.d) v.dim_err("analysis.a0", "must have size space.d");
  }
  if (j.contains("alpha0")) {
    out.alpha0 = get_vec(v, j["alpha0"], "analysis.alpha0");
    if (out.alpha0.size() != dims.n) v.dim_err("analysis.alpha0", "must have size space.n");
  }
  if (j.contains("s0")) {
    out.s0 = get_vec(v, j["s0"], "analysis.s0");
  } else {
    out.s0 = Vec::Zero(0);
  }
  if (out.s0.size() != dims.q) v.dim_err("analysis.s0", "must have size space.q");

  auto opt_pos = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const double x = get_num(v, j[key], std::string("analysis.") + key, fallback);
    if (!(x > 0.0)) v.schema_err(std::string("analysis.") + key, "must be positive");
    return x;
  };
  out.tol_crit = opt_pos("tol_crit", 1e-8);
  out.tol_haus = opt_pos("tol_haus", 1e-6 * bound);
  out.tol_env = opt_pos("tol_env", 1e-6 * bound);
  out.gap_tol = opt_pos("gap_tol", kDefaultGapTol);

  if (j.contains("sequences")) {
    const json& sj = j["sequences"];
    if (expect_keys(v, sj, "analysis.sequences", {}, {"count", "length", "ratio", "r0"})) {
      if (sj.contains("count")) out.seq.count = get_int(v, sj["count"], "analysis.sequences.count", 8);
      if (sj.contains("length"))
        out.seq.length = get_int(v, sj["length"], "analysis.sequences.length", 24);
      if (sj.contains("ratio"))
        out.seq.gamma = get_num(v, sj["ratio"], "analysis.sequences.ratio", 0.5);
      if (sj.contains("r0")) out.seq.r0 = get_num(v, sj["r0"], "analysis.sequences.r0", 0.0);
      if (out.seq.count < 4) v.schema_err("analysis.sequences.count", "must be >= 4");
      if (out.seq.length < 8) v.schema_err("analysis.sequences.length", "must be >= 8");
      if (!(out.seq.gamma > 0.0 && out.seq.gamma < 1.0))
        v.schema_err("analysis.sequences.ratio", "must lie in (0,1)");
      if (sj.contains("r0") && !(out.seq.r0 > 0.0))
        v.schema_err("analysis.sequences.r0", "must be positive");
    }
  }
  if (out.seq.r0 <= 0.0) out.seq.r0 = domain_scale / 8.0;

  if (j.contains("probes")) {
    if (!j["probes"].is_array()) {
      v.schema_err("analysis.probes", "expected an array of vectors");
    } else {
      for (size_t i = 0; i < j["probes"].size(); ++i) {
        const std::string p = "analysis.probes[" + std::to_string(i) + "]";
        Vec x = get_vec(v, j["probes"][i], p);
        if (x.size() != dims.m)
          v.dim_err(p, "probe must have size space.m");
        out.probes.push_back(std::move(x));
      }
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      v.schema_err("analysis.seed", "expected a nonnegative integer");
    else
      out.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("radii")) {
    const Vec r = get_vec(v, j["radii"], "analysis.radii");
    out.radii.assign(r.data(), r.data() + r.size());
    for (size_t i = 0; i < out.radii.size(); ++i) {
      if (!(out.radii[i] >= 0.0))
        v.schema_err("analysis.radii[" + std::to_string(i) + "]", "must be >= 0");
      if (i > 0 && !(out.radii[i] < out.radii[i - 1]))
        v.schema_err("analysis.radii[" + std::to_string(i) + "]", "radii must decrease");
    }
    if (out.radii.empty()) v.schema_err("analysis.radii", "must be nonempty");
  } else {
    out.radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  }

  if (j.contains("line_search")) {
    const json& lj = j["line_search"];
    if (expect_keys(v, lj, "analysis.line_search", {},
                    {"sigma", "beta", "t0", "max_backtracks"})) {
      if (lj.contains("sigma"))
        out.line_search.sigma = get_num(v, lj["sigma"], "analysis.line_search.sigma", 0.1);
      if (lj.contains("beta"))
        out.line_search.beta = get_num(v, lj["beta"], "analysis.line_search.beta", 0.5);
      if (lj.contains("t0"))
        out.line_search.t0 = get_num(v, lj["t0"], "analysis.line_search.t0", 1.0);
      if (lj.contains("max_backtracks"))
        out.line_search.max_backtracks =
            get_int(v, lj["max_backtracks"], "analysis.line_search.max_backtracks", 60);
      if (!(out.line_search.sigma > 0.0 && out.line_search.sigma < 1.0))
        v.schema_err("analysis.line_search.sigma", "must lie in (0,1)");
      if (!(out.line_search.beta > 0.0 && out.line_search.beta < 1.0))
        v.schema_err("analysis.line_search.beta", "must lie in (0,1)");
      if (!(out.line_search.t0 > 0.0))
        v.schema_err("analysis.line_search.t0", "must be positive");
      if (out.line_search.max_backtracks < 0)
        v.schema_err("analysis.line_search.max_backtracks", "must be >= 0");
    }
  }

  if (j.contains("max_iterations")) {
    out.max_iterations = get_int(v, j["max_iterations"], "analysis.max_iterations", 200);
    if (out.max_iterations < 0) v.schema_err("analysis.max_iterations", "must be >= 0");
  }
  if (j.contains("scan_points")) {
    out.scan_points = get_int(v, j["scan_points"], "analysis.scan_points", 201);
    if (out.scan_points < 2) v.schema_err("analysis.scan_points", "must be >= 2");
  }
  if (j.contains("grid_points_per_axis")) {
    out.grid_points_per_axis =
        get_int(v, j["grid_points_per_axis"], "analysis.grid_points_per_axis", 33);
    if (out.grid_points_per_axis < 2)
      v.schema_err("analysis.grid_points_per_axis", "must be >= 2");
  }
  return out;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded())
    throw LoadError(LoadErrorCode::parse_error, {"input is not valid JSON"});

  Validator v;
  if (!expect_keys(v, root, "$", {"space", "cone_family", "objective", "analysis"}))
    v.throw_if_bad();

  const SpaceDims dims = parse_space(v, root["space"]);
  v.throw_if_bad();

  std::optional<FiberFamily> family = parse_cone_family(v, root["cone_family"], dims);
  v.throw_if_bad();
  if (!family) throw LoadError(LoadErrorCode::schema_violation, {"cone_family: unusable"});

  std::optional<ObjectiveFamily> objective = parse_objective(v, root["objective"], dims);
  v.throw_if_bad();
  if (!objective) throw LoadError(LoadErrorCode::schema_violation, {"objective: unusable"});

  AnalysisParams analysis = parse_analysis(v, root["analysis"], dims, family->bound(),
                                           family->domain().scale());
  v.throw_if_bad();

  if (objective->value_dim() != dims.m)
    v.dim_err("objective", "value dimension must equal space.m");
  if (objective->decision_dim() != dims.n)
    v.dim_err("objective", "decision dimension must equal space.n");
  if (family->value_dim() != dims.m)
    v.dim_err("cone_family", "value dimension must equal space.m");
  if (analysis.a0.size() == dims.d && !family->domain().contains(analysis.a0, 1e-12))
    v.dim_err("analysis.a0", "must lie inside the domain box");
  v.throw_if_bad();

  return ProblemSpec{dims, std::move(*family), std::move(*objective), std::move(analysis)};
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LoadError(LoadErrorCode::parse_error, {"cannot open file: " + path});
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_problem(oss.str());
}

namespace {

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mat_to_json(const Mat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i).transpose()));
  return out;
}

json points_to_json(const std::vector<Vec>& pts) {
  json out = json::array();
  for (const Vec& p : pts) out.push_back(vec_to_json(p));
  return out;
}

json component_to_json(const QuadraticComponent& c) {
  json out;
  out["quad"] = mat_to_json(c.quad);
  out["center"] = vec_to_json(c.center);
  out["offset"] = c.offset;
  if (c.s_shift.size() != 0) out["s_shift"] = mat_to_json(c.s_shift);
  return out;
}

}  // namespace

std::string serialize_problem(const ProblemSpec& spec) {
  json root;
  root["space"] = {{"n", spec.space.n}, {"m", spec.space.m}, {"d", spec.space.d},
                   {"q", spec.space.q}};

  json cone;
  const FiberFamily& f = spec.cone_family;
  cone["kind"] = to_string(f.kind());
  cone["domain"] = {{"lo", vec_to_json(f.domain().lo)}, {"hi", vec_to_json(f.domain().hi)}};
  cone["bound"] = f.bound();
  switch (f.kind()) {
    case FiberKind::constant:
      cone["base"] = points_to_json(f.base().points());
      break;
    case FiberKind::rotation:
      cone["base"] = points_to_json(f.base().points());
      cone["rate"] = f.rate();
      break;
    case FiberKind::jump:
      cone["base"] = points_to_json(f.base().points());
      cone["base2"] = points_to_json(f.base2().points());
      cone["breakpoint"] = f.breakpoint();
      break;
    case FiberKind::pinch:
    case FiberKind::expand:
      cone["base"] = points_to_json(f.base().points());
      cone["extra"] = points_to_json(f.extra());
      cone["breakpoint"] = f.breakpoint();
      break;
    case FiberKind::interpolation:
      cone["base"] = points_to_json(f.base().points());
      cone["base2"] = points_to_json(f.base2().points());
      break;
    case FiberKind::table: {
      cone["nodes"] = json::array();
      for (double nd : f.nodes()) cone["nodes"].push_back(nd);
      cone["sets"] = json::array();
      for (const GeneratorSet& s : f.sets()) cone["sets"].push_back(points_to_json(s.points()));
      break;
    }
  }
  root["cone_family"] = cone;

  json obj;
  const ObjectiveFamily& o = spec.objective;
  obj["kind"] = to_string(o.kind());
  switch (o.kind()) {
    case ObjectiveKind::affine:
      obj["matrix"] = mat_to_json(o.matrix());
      obj["offset"] = vec_to_json(o.offset());
      if (!o.s_matrices().empty()) {
        obj["s_matrices"] = json::array();
        for (const Mat& mk : o.s_matrices()) obj["s_matrices"].push_back(mat_to_json(mk));
      }
      break;
    case ObjectiveKind::quadratic_vector: {
      obj["components"] = json::array();
      for (const QuadraticComponent& c : o.components())
        obj["components"].push_back(component_to_json(c));
      break;
    }
    case ObjectiveKind::trig_vector:
      obj["amplitude"] = mat_to_json(o.amplitude());
      obj["frequency"] = mat_to_json(o.frequency());
      obj["phase"] = mat_to_json(o.phase());
      if (o.s_phase().size() != 0) obj["s_phase"] = mat_to_json(o.s_phase());
      break;
    case ObjectiveKind::table_of_quadratics: {
      obj["s_nodes"] = json::array();
      for (double nd : o.s_nodes()) obj["s_nodes"].push_back(nd);
      obj["tables"] = json::array();
      for (const auto& table : o.tables()) {
        json jt = json::array();
        for (const QuadraticComponent& c : table) jt.push_back(component_to_json(c));
        obj["tables"].push_back(jt);
      }
      break;
    }
  }
  root["objective"] = obj;

  const AnalysisParams& an = spec.analysis;
  json aj;
  aj["tol_crit"] = an.tol_crit;
  aj["tol_haus"] = an.tol_haus;
  aj["tol_env"] = an.tol_env;
  aj["gap_tol"] = an.gap_tol;
  aj["sequences"] = {{"count", an.seq.count}, {"length", an.seq.length},
                     {"ratio", an.seq.gamma}, {"r0", an.seq.r0}};
  if (!an.probes.empty()) aj["probes"] = points_to_json(an.probes);
  aj["seed"] = an.seed;
  aj["a0"] = vec_to_json(an.a0);
  aj["alpha0"] = vec_to_json(an.alpha0);
  if (an.s0.size() != 0) aj["s0"] = vec_to_json(an.s0);
  aj["radii"] = json::array();
  for (double r : an.radii) aj["radii"].push_back(r);
  aj["line_search"] = {{"sigma", an.line_search.sigma}, {"beta", an.line_search.beta},
                       {"t0", an.line_search.t0},
                       {"max_backtracks", an.line_search.max_backtracks}};
  aj["max_iterations"] = an.max_iterations;
  aj["scan_points"] = an.scan_points;
  aj["grid_points_per_axis"] = an.grid_points_per_axis;
  root["analysis"] = aj;

  return root.dump(2) + "\n";
}

}  // namespace conedesc
