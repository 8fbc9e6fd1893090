#include "config.hpp"

#include <fstream>

namespace czreach::cli {

namespace {

int int_at(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi)
    throw SchemaError(path, "expected a value in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double real_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

const json& required(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(path, std::string("missing required key '") + key + "'");
  return j.at(key);
}

void require_dim(Eigen::Index got, Eigen::Index want, const std::string& path, const char* what) {
  if (got != want)
    throw SchemaError(path, std::string(what) + " has dimension " + std::to_string(got) + ", expected " +
                                std::to_string(want));
}

SystemModel model_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return model_by_name(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path, e.what());
    }
  }
  check_keys(j, path, {"name", "A", "B"});
  std::string name = j.contains("name") ? string_at(j["name"], path + "/name") : "linear";
  Mat A = matrix_from_json(required(j, path, "A"), path + "/A");
  Mat B = matrix_from_json(required(j, path, "B"), path + "/B");
  if (A.rows() == 0 || A.rows() != A.cols()) throw SchemaError(path + "/A", "expected a nonempty square matrix");
  if (B.rows() != A.rows()) throw SchemaError(path + "/B", "row count does not match A");
  return linear_model(name, A, B);
}

HPolytope safe_piece(const json& j, const std::string& path, Eigen::Index n) {
  if (j.is_object() && j.contains("H") && j["H"].is_array() && j["H"].empty()) {
    check_keys(j, path, {"H", "a"});
    if (!required(j, path, "a").is_array() || !j["a"].empty()) throw SchemaError(path + "/a", "expected an empty array");
    return HPolytope(Mat(0, n), Vec(0));
  }
  HPolytope P = hpolytope_from_json(j, path);
  require_dim(P.dim(), n, path, "safe piece");
  return P;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

ReachConfig parse_reach(const json& j) {
  check_keys(j, "", {"model", "target", "inputs", "disturbance", "safe", "horizon", "method", "alpha", "L_bar",
                     "max_branches", "max_scale_iters", "max_split_depth", "output"});
  ReachConfig cfg;
  ReachProblem& p = cfg.problem;
  p.model = model_from_json(required(j, "", "model"), "/model");
  const Eigen::Index n = p.model.n, q = p.model.q;

  p.target = cz_from_json(required(j, "", "target"), "/target");
  require_dim(p.target.dim(), n, "/target", "target");
  if (j.contains("inputs")) {
    p.inputs = cz_from_json(j["inputs"], "/inputs");
  } else {
    if (p.model.default_inputs.dim() != q) throw SchemaError("", "missing required key 'inputs'");
    p.inputs = CZ(p.model.default_inputs);
  }
  require_dim(p.inputs.dim(), q, "/inputs", "input set");
  p.disturbance = zonotope_from_json(required(j, "", "disturbance"), "/disturbance");
  require_dim(p.disturbance.dim(), n, "/disturbance", "disturbance");

  std::vector<HPolytope> pieces;
  if (j.contains("safe")) {
    const json& s = j["safe"];
    if (!s.is_array() || s.empty()) throw SchemaError("/safe", "expected a nonempty array of polytopes");
    for (std::size_t i = 0; i < s.size(); ++i) pieces.push_back(safe_piece(s[i], "/safe/" + std::to_string(i), n));
  } else {
    pieces.emplace_back(Mat(0, n), Vec(0));
  }
  p.safe = SafeSet(std::move(pieces));

  p.horizon = int_at(required(j, "", "horizon"), "/horizon", 0, 100000);
  if (j.contains("method")) {
    std::string m = string_at(j["method"], "/method");
    if (m == "scaling")
      p.method = Method::Scaling;
    else if (m == "splitting")
      p.method = Method::Splitting;
    else
      throw SchemaError("/method", "expected \"scaling\" or \"splitting\"");
  }
  if (j.contains("alpha")) p.alpha = real_at(j["alpha"], "/alpha");
  if (j.contains("L_bar")) {
    p.L_bar = vector_from_json(j["L_bar"], "/L_bar");
    require_dim(p.L_bar.size(), n, "/L_bar", "L_bar");
  }
  if (j.contains("max_branches")) p.max_branches = int_at(j["max_branches"], "/max_branches", 1, 1000000);
  if (j.contains("max_scale_iters")) p.max_scale_iters = int_at(j["max_scale_iters"], "/max_scale_iters", 1, 10000);
  if (j.contains("max_split_depth")) p.max_split_depth = int_at(j["max_split_depth"], "/max_split_depth", 0, 60);

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "/output", {"samples_per_set", "volume_samples", "certificate_samples", "plot_axes"});
    OutputOptions& out = cfg.output;
    if (o.contains("samples_per_set")) out.samples_per_set = int_at(o["samples_per_set"], "/output/samples_per_set", 0, 100000);
    if (o.contains("volume_samples")) {
      out.volume_samples = int_at(o["volume_samples"], "/output/volume_samples", 0, 100000000);
      if (out.volume_samples != 0 && out.volume_samples < 1000)
        throw SchemaError("/output/volume_samples", "expected 0 or at least 1000");
    }
    if (o.contains("certificate_samples"))
      out.certificate_samples = int_at(o["certificate_samples"], "/output/certificate_samples", 0, 100000);
    if (o.contains("plot_axes")) {
      const json& a = o["plot_axes"];
      if (!a.is_array() || a.size() != 2) throw SchemaError("/output/plot_axes", "expected two axis indices");
      for (int k = 0; k < 2; ++k)
        out.plot_axes[k] = int_at(a[k], "/output/plot_axes/" + std::to_string(k), 0, static_cast<int>(n) - 1);
      if (out.plot_axes[0] == out.plot_axes[1]) throw SchemaError("/output/plot_axes", "axes must differ");
    }
  }

  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError("", e.what());
  }
  return cfg;
}

MinkdiffConfig parse_minkdiff(const json& j) {
  check_keys(j, "", {"minuend", "subtrahend", "sigma_bar", "directions", "grid_resolution", "state_samples",
                     "disturbance_samples", "random_batch", "weights", "ensure_nonempty"});
  MinkdiffConfig cfg;
  if (j.contains("directions")) cfg.directions = int_at(j["directions"], "/directions", 1, 100000);
  if (j.contains("grid_resolution")) cfg.grid_resolution = int_at(j["grid_resolution"], "/grid_resolution", 2, 2000);
  if (j.contains("state_samples")) cfg.state_samples = int_at(j["state_samples"], "/state_samples", 1, 1000000);
  if (j.contains("disturbance_samples"))
    cfg.disturbance_samples = int_at(j["disturbance_samples"], "/disturbance_samples", 1, 1000000);

  if (j.contains("random_batch")) {
    if (j.contains("minuend") || j.contains("subtrahend") || j.contains("sigma_bar") || j.contains("weights"))
      throw SchemaError("/random_batch", "a random batch cannot be combined with explicit sets");
    const json& b = j["random_batch"];
    check_keys(b, "/random_batch", {"instances", "dims", "max_generators", "max_subtrahend_generators",
                                    "max_constraints"});
    RandomBatch rb;
    if (b.contains("instances")) rb.instances = int_at(b["instances"], "/random_batch/instances", 1, 100000);
    if (b.contains("max_generators")) rb.max_generators = int_at(b["max_generators"], "/random_batch/max_generators", 2, 64);
    if (b.contains("max_subtrahend_generators"))
      rb.max_subtrahend_generators =
          int_at(b["max_subtrahend_generators"], "/random_batch/max_subtrahend_generators", 1, 64);
    if (b.contains("max_constraints"))
      rb.max_constraints = int_at(b["max_constraints"], "/random_batch/max_constraints", 0, 64);
    if (b.contains("dims")) {
      const json& d = b["dims"];
      if (!d.is_array() || d.empty()) throw SchemaError("/random_batch/dims", "expected a nonempty array");
      rb.dims.clear();
      for (std::size_t i = 0; i < d.size(); ++i) {
        int n = int_at(d[i], "/random_batch/dims/" + std::to_string(i), 1, 16);
        if (n >= rb.max_generators)
          throw SchemaError("/random_batch/dims/" + std::to_string(i), "dimension must be below max_generators");
        rb.dims.push_back(n);
      }
    }
    cfg.batch = rb;
    return cfg;
  }

  const json& m = required(j, "", "minuend");
  if (m.is_object() && m.contains("H"))
    cfg.minuend_h = hpolytope_from_json(m, "/minuend");
  else
    cfg.minuend = cz_from_json(m, "/minuend");
  const Eigen::Index n = cfg.minuend ? cfg.minuend->dim() : cfg.minuend_h->dim();
  if (j.contains("subtrahend") || !j.contains("sigma_bar")) {
    cfg.subtrahend = zonotope_from_json(required(j, "", "subtrahend"), "/subtrahend");
    require_dim(cfg.subtrahend.dim(), n, "/subtrahend", "subtrahend");
  } else {
    cfg.subtrahend = Zonotope::point(Vec::Zero(n));
  }
  if (j.contains("sigma_bar")) {
    if (!cfg.minuend) throw SchemaError("/sigma_bar", "shrink factors need a constrained-zonotope minuend");
    Vec s = vector_from_json(j["sigma_bar"], "/sigma_bar");
    require_dim(s.size(), cfg.minuend->num_generators(), "/sigma_bar", "sigma_bar");
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) < 0.0 || s(i) > 1.0) throw SchemaError("/sigma_bar/" + std::to_string(i), "expected a value in [0, 1]");
    cfg.sigma_bar = s;
  }
  if (j.contains("ensure_nonempty")) {
    if (!j["ensure_nonempty"].is_boolean()) throw SchemaError("/ensure_nonempty", "expected a boolean");
    cfg.shrink_options.ensure_nonempty = j["ensure_nonempty"].get<bool>();
  }
  if (j.contains("weights")) {
    if (!cfg.minuend || cfg.sigma_bar) throw SchemaError("/weights", "weights need a constrained-zonotope minuend and no sigma_bar");
    Vec w = vector_from_json(j["weights"], "/weights");
    require_dim(w.size(), cfg.minuend->num_generators(), "/weights", "weights");
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (!(w(i) > 0.0)) throw SchemaError("/weights/" + std::to_string(i), "expected a positive value");
    cfg.shrink_options.weights = w;
  }
  return cfg;
}

}  // namespace czreach::cli
