#include "config.hpp"
#include "svg.hpp"

#include "czreach/acceptance.hpp"
#include "czreach/brs.hpp"
#include "czreach/mink_diff.hpp"
#include "czreach/sample.hpp"
#include "czreach/validation.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace czreach;
using namespace czreach::cli;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string config;
  std::string out = ".";
  bool out_given = false;
  std::uint64_t seed = 1;
  bool svg = false;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return seed * 1000003ULL + a * 7919ULL + b;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json box_json(const Hyperbox& b) { return to_json(b); }

Hyperbox project_box(const Hyperbox& b, int i, int j) {
  Vec lo(2), hi(2);
  lo << b.lower()(i), b.lower()(j);
  hi << b.upper()(i), b.upper()(j);
  return Hyperbox(lo, hi);
}

Vec project(const Vec& x, int i, int j) {
  Vec p(2);
  p << x(i), x(j);
  return p;
}

// ------------------------------------------------------------------ reach

int cmd_reach(const Common& c) {
  ReachConfig cfg = parse_reach(read_json_file(c.config));
  const ReachProblem& p = cfg.problem;
  fs::create_directories(c.out);
  ReachResult r = run(p);
  const Eigen::Index n = p.model.n;

  json steps = json::array();
  json diag = json::array();
  std::string csv = "step,piece";
  for (Eigen::Index i = 0; i < n; ++i) csv += ",x" + std::to_string(i + 1);
  csv += "\n";
  std::vector<PlotLayer> layers;
  const int ax = cfg.output.plot_axes[0], ay = cfg.output.plot_axes[1];

  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    json sets = json::array();
    PlotLayer layer;
    layer.label = "step " + std::to_string(k);
    std::optional<Hyperbox> hull;
    for (std::size_t i = 0; i < r.steps[k].size(); ++i) {
      const CZ& S = r.steps[k][i];
      sets.push_back(to_json(S));
      Hyperbox b = interval_closure(S);
      hull = hull ? Hyperbox::hull(*hull, b) : b;
      layer.boxes.push_back(project_box(b, ax, ay));
      if (cfg.output.samples_per_set > 0) {
        MemberSampler sampler(S, derive_seed(c.seed, k, i));
        for (const Vec& x : sampler.samples(cfg.output.samples_per_set)) {
          csv += std::to_string(k) + "," + std::to_string(i);
          for (Eigen::Index d = 0; d < n; ++d) csv += "," + real(x(d));
          csv += "\n";
          layer.points.push_back(project(x, ax, ay));
        }
      }
    }
    steps.push_back({{"step", k}, {"sets", sets}});
    const StepDiagnostics& d = r.diagnostics[k];
    json dj = {{"step", k},
               {"pieces", r.steps[k].size()},
               {"scale_iterations", d.scale_iterations},
               {"splits", d.splits},
               {"pruned_empty", d.pruned_empty},
               {"depth_cap_hits", d.depth_cap_hits},
               {"candidates", d.candidates}};
    if (hull) dj["closure"] = box_json(*hull);
    diag.push_back(dj);
    layers.push_back(std::move(layer));
  }

  const int last = static_cast<int>(r.steps.size()) - 1;
  write_json(fs::path(c.out) / "steps.json", {{"model", p.model.name},
                                              {"method", to_string(p.method)},
                                              {"termination", to_string(r.termination)},
                                              {"steps", steps}});
  write_text(fs::path(c.out) / "points.csv", csv);
  write_json(fs::path(c.out) / "diag.json", {{"steps", diag}});

  json report = {{"model", p.model.name},
                 {"method", to_string(p.method)},
                 {"horizon", p.horizon},
                 {"last_step", last},
                 {"termination", to_string(r.termination)},
                 {"final_pieces", r.steps.back().size()},
                 {"seed", c.seed}};
  if (cfg.output.volume_samples > 0) {
    VolumeEstimate v = mc_volume_union(r.steps.back(), cfg.output.volume_samples, c.seed);
    report["volume"] = {{"step", last}, {"value", v.value}, {"std_error", v.std_error}, {"samples", v.samples}};
  }
  if (cfg.output.certificate_samples > 0 && last > 0) {
    ClosedLoopStats st = closed_loop_check(p, r, cfg.output.certificate_samples, 1e-6, derive_seed(c.seed, 99));
    report["certificates"] = {{"samples", st.samples},
                              {"certified", st.certified},
                              {"successor_in_target", st.successor},
                              {"error_inside_L", st.error_in_L}};
  }
  write_json(fs::path(c.out) / "report.json", report);

  if (c.svg) {
    std::string name = "plot_" + std::to_string(ax) + "_" + std::to_string(ay) + ".svg";
    write_text(fs::path(c.out) / name,
               render_svg(layers, "x" + std::to_string(ax + 1), "x" + std::to_string(ay + 1)));
  }
  std::printf("%s: %d step(s), %s, %zu final piece(s)\n", p.model.name.c_str(), last, to_string(r.termination),
              r.steps.back().size());
  return 0;
}

// --------------------------------------------------------------- minkdiff

json diff_json(const DiffResult& d) {
  return {{"difference", to_json(d.difference)},
          {"enclosing", to_json(d.enclosing)},
          {"sigma_bar", to_json(d.shrink.sigma_bar)},
          {"sigma_sum", d.shrink.sigma_bar.sum()},
          {"lp_iterations", d.shrink.lp_iterations},
          {"exactness_certificate", d.exactness_certificate},
          {"empty", d.empty}};
}

struct Soundness {
  long pairs = 0;
  long violations = 0;
};

Soundness soundness(const CZ& minuend, const CZ& difference, const CZ& subtrahend, int nx, int nw, std::uint64_t seed) {
  Soundness s;
  if (is_empty(difference)) return s;
  MembershipOracle in(minuend);
  MemberSampler xs(difference, seed), ws(subtrahend, seed + 1);
  std::vector<Vec> W = ws.samples(nw);
  for (const Vec& x : xs.samples(nx))
    for (const Vec& w : W) {
      ++s.pairs;
      if (!(in.residual(x + w) <= 1e-6)) ++s.violations;
    }
  return s;
}

json soundness_json(const Soundness& s) {
  return {{"pairs", s.pairs}, {"violations", s.violations}, {"sound", s.violations == 0}};
}

int minkdiff_batch(const Common& c, const MinkdiffConfig& cfg) {
  const RandomBatch& b = *cfg.batch;
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  auto gaussian = [&](Eigen::Index r, Eigen::Index k, double scale) {
    Mat M(r, k);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < k; ++j) M(i, j) = scale * g(rng);
    return M;
  };
  json items = json::array();
  long pairs = 0, violations = 0;
  int checked = 0, sound = 0, infeasible = 0, empty = 0;
  for (int t = 0; t < b.instances; ++t) {
    const int n = b.dims[t % b.dims.size()];
    const int N = std::uniform_int_distribution<int>(n + 1, b.max_generators)(rng);
    const int m = std::uniform_int_distribution<int>(0, std::max(0, std::min(b.max_constraints, N - n - 1)))(rng);
    const int Np = std::uniform_int_distribution<int>(1, b.max_subtrahend_generators)(rng);
    Mat G = gaussian(n, N, 1.0), A = gaussian(m, N, 1.0);
    Vec theta = Vec::NullaryExpr(N, [&]() { return std::uniform_real_distribution<double>(-0.4, 0.4)(rng); });
    CZ S(G, gaussian(n, 1, 0.2).col(0), A, A * theta);
    Zonotope Z(gaussian(n, Np, 0.08), gaussian(n, 1, 0.008).col(0));
    json item = {{"instance", t}, {"n", n}, {"generators", N}, {"constraints", m}, {"subtrahend_generators", Np}};
    try {
      DiffResult d = minkdiff_two_step(S, Z);
      if (d.empty || is_empty(d.difference)) {
        item["status"] = "empty";
        ++empty;
      } else {
        Soundness s = soundness(S, d.difference, CZ(Z), cfg.state_samples, cfg.disturbance_samples,
                                derive_seed(c.seed, t));
        item["status"] = "checked";
        item["sigma_sum"] = d.shrink.sigma_bar.sum();
        item["soundness"] = soundness_json(s);
        pairs += s.pairs;
        violations += s.violations;
        ++checked;
        if (s.violations == 0) ++sound;
      }
    } catch (const MinOutInfeasible&) {
      item["status"] = "infeasible";
      ++infeasible;
    }
    items.push_back(item);
  }
  json report = {{"mode", "random_batch"},
                 {"seed", c.seed},
                 {"instances", items},
                 {"checked", checked},
                 {"infeasible", infeasible},
                 {"empty", empty},
                 {"pairs", pairs},
                 {"violations", violations},
                 {"sound_instances_percent", checked ? 100.0 * sound / checked : 0.0}};
  write_json(fs::path(c.out) / "report.json", report);
  std::printf("random batch: %d checked, %d infeasible, %d empty, %ld violations in %ld pairs\n", checked, infeasible,
              empty, violations, pairs);
  return 0;
}

int cmd_minkdiff(const Common& c) {
  MinkdiffConfig cfg = parse_minkdiff(read_json_file(c.config));
  fs::create_directories(c.out);
  if (cfg.batch) return minkdiff_batch(c, cfg);

  const Zonotope& Z = cfg.subtrahend;
  const Eigen::Index n = Z.dim();
  json report = {{"seed", c.seed}};
  std::vector<PlotLayer> layers;
  std::vector<Vec> dirs = unit_directions(n, cfg.directions, derive_seed(c.seed, 1));
  json gaps = json::array();

  if (cfg.minuend_h) {
    const HPolytope& P = *cfg.minuend_h;
    report["mode"] = "rich_exact";
    HPolytope D = exact_hrep_diff(P, Z);
    report["oracle"] = {{"kind", "hrep"}, {"polytope", to_json(D)}, {"empty", is_empty(D)}};
    DiffResult r = minkdiff_exact_via_rich(P, Z);
    report["rich"] = diff_json(r);
    if (!r.empty && !is_empty(D)) {
      double worst = 0.0;
      for (const Vec& h : dirs) {
        double a = support(r.difference, h), b = support(D, h);
        worst = std::max(worst, std::abs(a - b));
        gaps.push_back({{"direction", to_json(h)}, {"computed", a}, {"oracle", b}, {"gap", b - a}});
      }
      report["support_gaps"] = gaps;
      report["max_abs_gap"] = worst;
      Soundness s = soundness(rich_cgrep(P, Z), r.difference, CZ(Z), cfg.state_samples, cfg.disturbance_samples,
                              derive_seed(c.seed, 2));
      report["soundness"] = soundness_json(s);
    }
    report["verdicts_agree"] = r.empty == is_empty(D);
    if (c.svg && n == 2) {
      MemberSampler ps(rich_cgrep(P, Z), derive_seed(c.seed, 3));
      layers.push_back({"minuend", ps.samples(400), {interval_closure(P)}});
      if (!r.empty) {
        MemberSampler ds(r.difference, derive_seed(c.seed, 4));
        layers.push_back({"difference", ds.samples(400), {interval_closure(r.difference)}});
      }
    }
  } else {
    const CZ& S = *cfg.minuend;
    DiffResult r;
    if (cfg.sigma_bar) {
      report["mode"] = "fixed_shrink";
      MinOutSolution shrink;
      shrink.sigma_bar = *cfg.sigma_bar;
      shrink.gamma = Mat::Zero(S.num_generators(), 0);
      shrink.c_s = Z.center();
      shrink.b_s = Vec::Zero(S.num_constraints());
      r = step_two(S, shrink);
    } else {
      report["mode"] = "two_step";
      r = step_two(S, min_out_simple(S, Z, cfg.shrink_options));
    }
    report["two_step"] = diff_json(r);
    const bool d_empty = r.empty || is_empty(r.difference);
    // subtrahend used by the oracle: the enclosure when the factors are fixed
    const CZ sub = cfg.sigma_bar ? r.enclosing : CZ(Z);
    if (!d_empty)
      report["soundness"] = soundness_json(
          soundness(S, r.difference, sub, cfg.state_samples, cfg.disturbance_samples, derive_seed(c.seed, 2)));
    if (n == 2) {
      std::vector<Vec> pts;
      for (const Vec& h : unit_directions(2, 256, derive_seed(c.seed, 5))) pts.push_back(support_point(sub, h).point);
      MemberSampler sp(sub, derive_seed(c.seed, 6));
      for (const Vec& v : sp.samples(100)) pts.push_back(v);
      DiffGrid grid = brute_force_diff_2d(S, pts, cfg.grid_resolution);
      std::optional<HitTester> in_d;
      if (!d_empty) in_d.emplace(r.difference);
      int in_oracle = 0, gap_points = 0, outside = 0;
      std::vector<Vec> oracle_pts;
      for (std::size_t i = 0; i < grid.points.size(); ++i) {
        bool o = grid.in_difference[i];
        bool d = in_d && in_d->contains(grid.points[i]);
        if (o) {
          ++in_oracle;
          oracle_pts.push_back(grid.points[i]);
        }
        if (o && !d) ++gap_points;
        if (d && !o) ++outside;
      }
      report["oracle"] = {{"kind", "grid"},
                          {"resolution", cfg.grid_resolution},
                          {"subtrahend_points", pts.size()},
                          {"points_in_difference", in_oracle},
                          {"gap_points", gap_points},
                          {"computed_points_outside_oracle", outside}};
      if (!oracle_pts.empty()) {
        double worst = 0.0;
        for (const Vec& h : dirs) {
          double b = -std::numeric_limits<double>::infinity();
          for (const Vec& x : oracle_pts) b = std::max(b, h.dot(x));
          double a = d_empty ? -std::numeric_limits<double>::infinity() : support(r.difference, h);
          json g = {{"direction", to_json(h)}, {"oracle", b}};
          if (!d_empty) {
            g["computed"] = a;
            g["gap"] = b - a;
            worst = std::max(worst, b - a);
          }
          gaps.push_back(g);
        }
        report["support_gaps"] = gaps;
        if (!d_empty) report["max_gap"] = worst;
      }
      if (c.svg) {
        MemberSampler ms(S, derive_seed(c.seed, 3));
        layers.push_back({"minuend", ms.samples(400), {interval_closure(S)}});
        layers.push_back({"oracle", oracle_pts, {}});
        if (!d_empty) {
          MemberSampler ds(r.difference, derive_seed(c.seed, 4));
          layers.push_back({"difference", ds.samples(400), {interval_closure(r.difference)}});
        }
      }
    }
  }
  write_json(fs::path(c.out) / "report.json", report);
  if (c.svg && !layers.empty()) write_text(fs::path(c.out) / "plot_0_1.svg", render_svg(layers, "x1", "x2"));
  std::printf("minkdiff: %s\n", report["mode"].get<std::string>().c_str());
  return 0;
}

// --------------------------------------------------------------- validate

int cmd_validate(const Common& c, const std::vector<int>& only, double tolerance_scale) {
  acceptance::Options opts;
  opts.tolerance_scale = tolerance_scale;
  std::set<int> wanted(only.begin(), only.end());
  for (int id : wanted) {
    bool known = false;
    for (const auto& cr : acceptance::criteria()) known = known || cr.id == id;
    if (!known) throw SchemaError("/only", "unknown criterion " + std::to_string(id));
  }
  json rows = json::array();
  bool all = true;
  std::printf("%-4s  %-2s  %-62s %8s  %s\n", "", "id", "criterion", "time", "detail");
  for (const auto& cr : acceptance::criteria()) {
    if (!wanted.empty() && !wanted.count(cr.id)) continue;
    acceptance::Outcome o = acceptance::run_criterion(cr.id, opts);
    std::printf("%-4s  %2d  %-62s %7.1fs  %s\n", o.passed ? "PASS" : "FAIL", o.id, o.name.c_str(), o.seconds,
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.passed;
    rows.push_back({{"id", o.id},
                    {"name", o.name},
                    {"passed", o.passed},
                    {"detail", o.detail},
                    {"budget_seconds", o.budget_seconds}});
  }
  if (c.out_given) {
    fs::create_directories(c.out);
    write_json(fs::path(c.out) / "report.json", {{"criteria", rows}, {"all_passed", all}});
  }
  return all ? 0 : kExitFailed;
}

void emit_error(const Common& c, const char* kind, const std::string& path, const std::string& message) {
  json doc = {{"error", {{"kind", kind}, {"path", path}, {"message", message}}}};
  std::cerr << doc.dump(2) << "\n";
  if (!c.out_given) return;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  std::ofstream f(fs::path(c.out) / "error.json", std::ios::binary);
  if (f) f << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backward reachable sets with constrained zonotopes"};
  app.require_subcommand(1);
  Common common;
  std::vector<int> only;
  double tolerance_scale = 1.0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", common.config, "JSON configuration file");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output directory")->capture_default_str()->each([&](const std::string&) {
      common.out_given = true;
    });
    sub->add_option("--seed", common.seed, "seed for sampling")->capture_default_str();
    sub->add_flag("--svg", common.svg, "also write a planar plot");
  };
  CLI::App* reach = app.add_subcommand("reach", "compute backward reachable sets");
  add_common(reach, true);
  CLI::App* mink = app.add_subcommand("minkdiff", "Minkowski difference with oracle comparison");
  add_common(mink, true);
  CLI::App* val = app.add_subcommand("validate", "run the acceptance suite");
  add_common(val, false);
  val->add_option("--only", only, "criterion ids to run")->delimiter(',');
  val->add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance (test hook)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(Common{}, "usage", "", e.what());
    return kExitSchema;
  }

  try {
    if (*reach) return cmd_reach(common);
    if (*mink) return cmd_minkdiff(common);
    return cmd_validate(common, only, tolerance_scale);
  } catch (const SchemaError& e) {
    emit_error(common, "schema", e.path(), e.what());
    return kExitSchema;
  } catch (const std::exception& e) {
    emit_error(common, "runtime", "", e.what());
    return kExitRuntime;
  }
}
