// Batch experiment runner: binds the registered scenarios to the toolkit
// operations with deterministic seeds and machine-readable reports.
//
// Usage: gmmtk --config run.json [--out PREFIX] [--seed N] [--tol K=V ...]
//              [--jobs N]
//
// The config selects {scenario, command, params, seed, tolerances, output};
// command is one of: verify, polytope, orbit-polytope, flow, stratify, kn,
// weights, reduce, dh, moser, quotient, ce.
// Exit codes: 0 all checks pass, 1 check failure, 2 config error,
// 3 internal error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmmtk/convexity.hpp"
#include "gmmtk/cplx.hpp"
#include "gmmtk/flow.hpp"
#include "gmmtk/kempfness.hpp"
#include "gmmtk/moment.hpp"
#include "gmmtk/parallel.hpp"
#include "gmmtk/reduction.hpp"
#include "gmmtk/scenario.hpp"

namespace {

using gmm::CheckReport;
using gmm::Json;
using gmm::Rng;
using gmm::Scenario;
using gmm::Vec;

struct RunConfig {
  std::string scenario;
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerance_overrides;
  std::string output = "gmmtk-";
  int jobs = 1;
};

RunConfig parse_config(const Json& j) {
  RunConfig cfg;
  if (!j.contains("scenario") || !j.contains("command"))
    throw gmm::Error(gmm::ErrorKind::ConfigError,
                     "config requires 'scenario' and 'command'");
  cfg.scenario = j["scenario"].get<std::string>();
  cfg.command = j["command"].get<std::string>();
  if (j.contains("params")) cfg.params = j["params"];
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
      cfg.tolerance_overrides[it.key()] = it.value().get<double>();
  return cfg;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void append(Json& report, const CheckReport& r, bool& all_pass) {
  report["checks"].push_back(gmm::to_json(r));
  all_pass = all_pass && r.pass;
}

gmm::FlowOptions flow_options(const gmm::Tolerances& tol) {
  gmm::FlowOptions opts;
  opts.rtol = tol.ode_rtol;
  opts.atol = tol.ode_atol;
  opts.eps_crit = tol.eps_crit;
  opts.window = tol.crit_window;
  opts.t_max = tol.t_max;
  return opts;
}

// ---------------------------------------------------------------------------

bool cmd_verify(const Scenario& sc, const RunConfig& cfg,
                const gmm::Tolerances& tol, Json& report) {
  const int n = cfg.params.value("n_samples", 200);
  bool ok = true;
  Rng rng(cfg.seed);
  append(report, gmm::check_triple_invariants(sc, n, rng, tol.eps_num), ok);
  append(report, gmm::check_momentumly_closed(sc, n, rng, tol.tol_def), ok);
  append(report, gmm::check_equivariant_closedness_nu(sc, n, rng, tol.tol_def),
         ok);
  append(report,
         gmm::check_defining_identity(sc.manifold, sc.action, sc.triple->omega,
                                      sc.psi, sc.sample, n, rng, tol.tol_def),
         ok);
  gmm::MomentMapEvaluator closed{gmm::MomentMapEvaluator::Provenance::ClosedForm,
                                 sc.psi, Vec(), Vec()};
  append(report, gmm::check_gradient_identity(sc, closed, n, rng, tol.tol_def),
         ok);
  append(report, gmm::check_domega_on_orbits(sc, n, rng, tol.tol_def), ok);
  if (cfg.params.value("reconstruct", false)) {
    // Path-integral reconstruction vs the closed form, one additive
    // constant per coordinate, with the loop-holonomy audit.
    auto ev = gmm::moment_from_form(sc, sc.base_point, sc.base_value,
                                    cfg.params.value("n_loops", 20), rng);
    Vec x0 = sc.sample(rng);
    Vec shift = ev.psi(x0) - sc.psi(x0);
    CheckReport r{"reconstruction_consistency", sc.name, 0, 0.0, 1e-6, false};
    for (int i = 0; i < std::min(n, 50); ++i) {
      Vec x = sc.sample(rng);
      r.max_deviation = std::max(
          r.max_deviation,
          (ev.psi(x) - sc.psi(x) - shift).lpNorm<Eigen::Infinity>());
      ++r.n_samples;
    }
    r.pass = r.max_deviation <= r.tolerance;
    append(report, r, ok);
  }
  // Metric invariance under the group action.
  {
    std::vector<Vec> pts;
    for (int i = 0; i < std::min(n, 100); ++i) pts.push_back(sc.sample(rng));
    auto inv = gmm::check_invariance(
        sc.manifold, sc.action,
        [&sc](const Vec& x, const Vec& u, const Vec& v) {
          return sc.triple->g(x, u, v);
        },
        pts, rng, 100.0 * tol.tol_inv);
    CheckReport r{"metric_invariance", sc.name, inv.n_samples,
                  inv.max_deviation, inv.tolerance, inv.pass};
    append(report, r, ok);
  }
  return ok;
}

bool cmd_polytope(const Scenario& sc, const RunConfig& cfg,
                  const gmm::Tolerances& tol, Json& report,
                  const std::string& out_prefix) {
  const int n = cfg.params.value("n_samples", 1000);
  Rng rng(cfg.seed);
  auto res = gmm::moment_polytope(sc, n, rng, tol.tol_hull, tol.hull_hausdorff);
  // Plot data: sampled moment images for external visualization.
  {
    Rng plot_rng(cfg.seed);
    std::ofstream csv(out_prefix + "moment-image.csv");
    csv.precision(17);
    for (int i = 0; i < sc.rank(); ++i)
      csv << (i ? "," : "") << "psi" << i;
    csv << "\n";
    for (int i = 0; i < n; ++i) {
      Vec v = sc.psi(sc.sample(plot_rng));
      for (int c = 0; c < v.size(); ++c) csv << (c ? "," : "") << v[c];
      csv << "\n";
    }
  }
  Json vertices = Json::array();
  for (const Vec& v : res.polytope.vertices) vertices.push_back(vec_json(v));
  report["polytope"] = {{"vertices", vertices},
                        {"max_violation", res.max_violation},
                        {"hausdorff", res.hausdorff}};
  CheckReport r{"moment_polytope", sc.name, res.n_samples,
                std::max(res.max_violation, res.hausdorff),
                std::max(tol.tol_hull, tol.hull_hausdorff), res.pass};
  bool ok = true;
  append(report, r, ok);
  return ok;
}

bool cmd_orbit_polytope(const Scenario& sc, const RunConfig& cfg,
                        const gmm::Tolerances& tol, Json& report) {
  const int n_points = cfg.params.value("n_points", 10);
  const int n_audit = cfg.params.value("n_audit", 50);
  Rng rng(cfg.seed);
  bool ok = true;
  report["orbit_polytopes"] = Json::array();
  for (int i = 0; i < n_points; ++i) {
    Vec m0 = sc.sample(rng);
    auto res = gmm::orbit_closure_polytope(sc, m0, n_audit, rng, tol.tol_hull);
    Json entry;
    entry["point"] = vec_json(m0);
    Json vertices = Json::array();
    for (const Vec& v : res.polytope.vertices) vertices.push_back(vec_json(v));
    entry["vertices"] = vertices;
    entry["max_violation"] = res.max_violation;
    entry["pass"] = res.pass;
    report["orbit_polytopes"].push_back(entry);
    ok = ok && res.pass;
  }
  CheckReport r{"orbit_closure_polytope", sc.name, n_points, 0.0, tol.tol_hull,
                ok};
  append(report, r, ok);
  return ok;
}

bool cmd_flow(const Scenario& sc, const RunConfig& cfg,
              const gmm::Tolerances& tol, Json& report,
              const std::string& out_prefix) {
  const int n = cfg.params.value("n_trajectories", 4);
  Rng rng(cfg.seed);
  auto opts = flow_options(tol);
  opts.max_samples = cfg.params.value("max_samples", 200);

  std::ofstream csv(out_prefix + "trajectories.csv");
  csv << "trajectory,t";
  for (int i = 0; i < sc.manifold.ambient_dim(); ++i) csv << ",x" << i;
  csv << ",f,grad_norm\n";
  csv.precision(17);
  bool ok = true;
  int converged = 0;
  for (int i = 0; i < n; ++i) {
    Vec x0 = sc.sample(rng);
    auto traj = gmm::integrate_negative_gradient(
        sc, gmm::FlowFunctional::norm_square(), x0, opts);
    if (traj.converged) ++converged;
    for (size_t s = 0; s < traj.times.size(); ++s) {
      csv << i << "," << traj.times[s];
      for (int c = 0; c < traj.points[s].size(); ++c)
        csv << "," << traj.points[s][c];
      csv << "," << traj.f_values[s] << "," << traj.grad_norms[s] << "\n";
    }
    // Monotonicity along the stored samples.
    for (size_t s = 1; s < traj.f_values.size(); ++s)
      if (traj.f_values[s] > traj.f_values[s - 1] + 1e-9) ok = false;
  }
  CheckReport r{"flow_monotone", sc.name, n, 0.0, 1e-9, ok};
  append(report, r, ok);
  report["converged"] = converged;
  return ok;
}

bool cmd_stratify(const Scenario& sc, const RunConfig& cfg,
                  const gmm::Tolerances& tol, Json& report) {
  const int n = cfg.params.value("n_samples", 100);
  Rng rng(cfg.seed);
  auto opts = flow_options(tol);

  auto critical = gmm::enumerate_critical_values(
      sc, cfg.params.value("seeds_per_stratum", 16), rng, opts);
  Json values = Json::array();
  for (const Vec& v : critical.values) values.push_back(vec_json(v));
  report["critical_values"] = values;
  report["cluster_gap"] = critical.min_center_gap;

  Json records = Json::array();
  int agree = 0, labeled = 0;
  const bool has_oracle = static_cast<bool>(sc.basin_oracle);
  for (int i = 0; i < n; ++i) {
    Vec x = sc.sample(rng);
    Json rec;
    rec["point"] = vec_json(x);
    try {
      auto label = gmm::stratum_label(sc, x, opts);
      rec["lambda"] = vec_json(label.lambda);
      rec["norm"] = label.norm;
      int idx = gmm::label_index(sc, label.lambda, tol.r_cluster);
      rec["label_index"] = idx;
      ++labeled;
      if (has_oracle && idx == sc.basin_oracle(x)) ++agree;
    } catch (const gmm::Error&) {
      rec["lambda"] = nullptr;  // unconverged points keep no label
    }
    records.push_back(rec);
  }
  report["labels"] = records;
  bool ok = labeled > 0 && (!has_oracle || agree == labeled);
  CheckReport r{"stratum_labels_vs_oracle", sc.name, labeled,
                has_oracle && labeled > 0 ? 1.0 - double(agree) / labeled : 0.0,
                0.0, ok};
  append(report, r, ok);
  return ok;
}

bool cmd_kn(const Scenario& sc, const RunConfig& cfg,
            const gmm::Tolerances& tol, Json& report) {
  const int n = cfg.params.value("n_samples", 25);
  bool ok = true;
  double worst_convex = 0.0, worst_cocycle = 0.0;
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(-1.5 + 0.25 * i);
  // Per-index RNG streams keep the batch deterministic for any job count.
  std::vector<double> convex(n), cocycle(n);
  gmm::parallel_for(n, cfg.jobs, [&](int i) {
    Rng rng = Rng(cfg.seed).fork(i);
    Vec m = sc.sample(rng);
    Vec xi = rng.sphere(sc.rank());
    auto conv = gmm::kn_convexity_check(sc, m, xi, grid, tol.eps_num);
    convex[i] = conv.min_second_difference;
    auto coc = gmm::kn_cocycle_check(sc, m, Vec(0.7 * rng.sphere(sc.rank())),
                                     Vec(0.7 * rng.sphere(sc.rank())),
                                     tol.eps_num);
    cocycle[i] = coc.residual;
  });
  for (int i = 0; i < n; ++i) {
    worst_convex = std::min(worst_convex, convex[i]);
    worst_cocycle = std::max(worst_cocycle, cocycle[i]);
  }
  ok = worst_convex >= -tol.eps_num && worst_cocycle <= tol.eps_num;
  CheckReport r1{"kn_convexity", sc.name, n, -worst_convex, tol.eps_num, ok};
  CheckReport r2{"kn_cocycle", sc.name, n, worst_cocycle, tol.eps_num, ok};
  append(report, r1, ok);
  append(report, r2, ok);
  return ok;
}

bool cmd_weights(const Scenario& sc, const RunConfig& cfg,
                 const gmm::Tolerances& tol, Json& report) {
  const int n = cfg.params.value("n_samples", 20);
  const int sampler =
      std::min<int>(cfg.params.value("stratum", 1),
                    static_cast<int>(sc.stratum_samplers.size()) - 1);
  auto opts = flow_options(tol);
  bool ok = true;
  Json entries = Json::array();
  double worst_gap = 0.0;
  std::vector<Json> slots(n);
  std::vector<double> gaps(n);
  std::vector<char> passed(n);
  gmm::parallel_for(n, cfg.jobs, [&](int i) {
    Rng rng = Rng(cfg.seed).fork(i);
    Vec m = sc.stratum_samplers[sampler](rng);
    auto weight = gmm::hesselink_weight(sc, m);
    auto mw = gmm::moment_weight_check(sc, m, opts, tol.tol_mw);
    Json e;
    e["m"] = vec_json(m);
    e["w_min"] = vec_json(weight.w_min);
    e["w_H"] = vec_json(mw.w_H);
    e["lambda"] = vec_json(mw.lambda);
    e["inf_slope"] = mw.inf_slope;
    e["semistable"] = weight.semistable;
    e["equality_gap"] = mw.equality_gap;
    Json cert = Json::array();
    for (const auto& [dir, slope] : weight.certificate) {
      Json c;
      c["dir"] = vec_json(dir);
      c["slope"] = slope;
      cert.push_back(c);
    }
    e["certificate_grid"] = cert;
    slots[i] = e;
    gaps[i] = mw.equality_gap;
    passed[i] = mw.pass ? 1 : 0;
  });
  for (int i = 0; i < n; ++i) {
    entries.push_back(slots[i]);
    worst_gap = std::max(worst_gap, gaps[i]);
    ok = ok && passed[i];
  }
  report["weights"] = entries;
  CheckReport r{"moment_weight_equality", sc.name, n, worst_gap, tol.tol_mw, ok};
  append(report, r, ok);
  return ok;
}

bool cmd_reduce(const Scenario& sc, const RunConfig& cfg,
                const gmm::Tolerances& tol, Json& report,
                const std::string& out_prefix) {
  Rng rng(cfg.seed);
  const int n = cfg.params.value("n_points", 40);
  Vec level = Vec::Zero(sc.rank());
  if (cfg.params.contains("level")) {
    auto lv = cfg.params["level"].get<std::vector<double>>();
    for (int i = 0; i < sc.rank() && i < static_cast<int>(lv.size()); ++i)
      level[i] = lv[i];
  }
  bool ok = true;
  auto sample = gmm::sample_level_set(sc, level, n, rng);
  append(report, gmm::check_reduction_descent(sc, sample, rng, 1e-8), ok);
  auto cs = gmm::check_reduced_complex_structure(sc, sample, tol.eps_num);
  CheckReport r{"reduced_complex_structure", sc.name, cs.n_samples,
                cs.max_J_leakage, tol.eps_num, cs.pass};
  append(report, r, ok);

  // Reduced-form dump for regression baselines.
  std::ofstream csv(out_prefix + "reduced.csv");
  csv.precision(17);
  csv << "point_index,coord_or_entry,value\n";
  for (size_t i = 0; i < sample.points.size(); ++i) {
    for (int c = 0; c < sample.points[i].size(); ++c)
      csv << i << ",x" << c << "," << sample.points[i][c] << "\n";
    const gmm::Mat& H = sample.horizontal[i];
    for (int a = 0; a < H.cols(); ++a)
      for (int b = a + 1; b < H.cols(); ++b)
        csv << i << ",omega_" << a << "_" << b << ","
            << gmm::reduced_form_at(sc, sample.points[i], H.col(a), H.col(b))
            << "\n";
  }

  if (sc.ce.has_value()) {
    double c = cfg.params.value("ce_level", 0.0);
    auto ce = gmm::ce_verify_reduction(*sc.ce, c, n, rng, 1e-5, tol);
    CheckReport rce{"ce_reduction_vs_tsukada", sc.name, ce.n_samples,
                    std::max({ce.max_form_dev, ce.max_metric_dev, ce.max_J_dev}),
                    ce.tolerance, ce.pass};
    append(report, rce, ok);
  }
  return ok;
}

bool cmd_dh(const Scenario& sc, const RunConfig& cfg,
            const gmm::Tolerances& tol, Json& report) {
  std::vector<double> grid;
  if (cfg.params.contains("levels"))
    grid = cfg.params["levels"].get<std::vector<double>>();
  else
    for (int i = 0; i < 9; ++i) grid.push_back(-0.9 + 0.1 * i);
  auto res = gmm::dh_variation(sc, grid, tol.fit_resid, 0.01);
  report["dh"] = {{"levels", res.levels},
                  {"integrals", res.integrals},
                  {"slope", res.slope},
                  {"rel_residual", res.rel_residual},
                  {"degree", res.degree},
                  {"slope_vs_degree", res.slope_vs_degree}};
  bool ok = true;
  CheckReport r{"dh_linear_variation", sc.name,
                static_cast<int>(grid.size()),
                std::max(res.rel_residual, res.slope_vs_degree),
                std::max(tol.fit_resid, 0.01), res.pass};
  append(report, r, ok);
  return ok;
}

bool cmd_moser(const Scenario& sc, const RunConfig& cfg,
               const gmm::Tolerances& tol, Json& report) {
  // Built-in pairs on flat R^4 with the diagonal circle.
  if (sc.name != "diag-c2")
    throw gmm::Error(gmm::ErrorKind::ConfigError,
                     "moser pairs are defined on diag-c2");
  Rng rng(cfg.seed);
  const int n = cfg.params.value("n_samples", 24);
  gmm::TwoFormFn omega0 = sc.triple->omega.eval;
  gmm::TwoFormFn conformal = [omega0](const Vec& x, const Vec& u, const Vec& v) {
    return (1.0 + 0.5 * x.squaredNorm()) * omega0(x, u, v);
  };
  // omega0 + d(|x|^2 <ix, dx>): an invariant exact perturbation vanishing
  // to second order at the origin.
  gmm::TwoFormFn exact = [omega0](const Vec& x, const Vec& u, const Vec& v) {
    auto alpha_u = 2.0 * x.dot(u) * gmm::cplx::times_i(x).dot(v) +
                   x.squaredNorm() * gmm::cplx::times_i(u).dot(v);
    auto alpha_v = 2.0 * x.dot(v) * gmm::cplx::times_i(x).dot(u) +
                   x.squaredNorm() * gmm::cplx::times_i(v).dot(u);
    return omega0(x, u, v) + (alpha_u - alpha_v);
  };
  bool ok = true;
  struct Pair {
    const char* name;
    gmm::TwoFormFn target;
  };
  std::vector<Pair> pairs = {{"identity", omega0},
                             {"conformal", conformal},
                             {"exact", exact}};
  for (auto& p : pairs) {
    auto res = gmm::moser_flow(sc.manifold, sc.action, omega0, p.target,
                               tol.moser_radius, n, rng, tol.tol_moser);
    CheckReport r{std::string("moser_") + p.name, sc.name, res.n_samples,
                  res.max_identity_dev, tol.tol_moser, res.pass};
    append(report, r, ok);
  }
  return ok;
}

bool cmd_quotient(const Scenario& sc, const RunConfig& cfg,
                  const gmm::Tolerances& tol, Json& report) {
  Rng rng(cfg.seed);
  auto res =
      gmm::quotient_scenario_check(cfg.params.value("n_points", 50), rng,
                                   1e-6, tol);
  report["quotient"] = {{"reduced_dim", res.reduced_dim},
                        {"max_J_dev", res.max_J_dev},
                        {"max_form_dev", res.max_form_dev},
                        {"area", res.area},
                        {"area_expected", res.area_expected}};
  bool ok = true;
  CheckReport r{"quotient_matches_reduction", sc.name, res.n_samples,
                std::max(res.max_J_dev, res.max_form_dev), 1e-6, res.pass};
  append(report, r, ok);
  return ok;
}

bool cmd_ce(const Scenario& sc, const RunConfig& cfg,
            const gmm::Tolerances& tol, Json& report) {
  if (!sc.ce.has_value())
    throw gmm::Error(gmm::ErrorKind::ConfigError, "ce command needs the CE scenario");
  Rng rng(cfg.seed);
  const int n = cfg.params.value("n_samples", 200);
  bool ok = true;
  append(report, gmm::check_triple_invariants(sc, n, rng, 1e-8), ok);
  append(report,
         gmm::check_defining_identity(sc.manifold, sc.action, sc.triple->omega,
                                      sc.psi, sc.sample, n, rng, 1e-6),
         ok);
  auto red = gmm::ce_verify_reduction(*sc.ce, cfg.params.value("ce_level", 0.0),
                                      n, rng, 1e-5, tol);
  CheckReport r{"ce_reduction_vs_tsukada", sc.name, red.n_samples,
                std::max({red.max_form_dev, red.max_metric_dev, red.max_J_dev}),
                red.tolerance, red.pass};
  append(report, r, ok);
  return ok;
}

int run(const RunConfig& cfg) {
  gmm::Tolerances tol;
  tol.apply(cfg.tolerance_overrides);
  Scenario sc = gmm::make_scenario(cfg.scenario, cfg.params, tol);

  Json report;
  report["report_version"] = 1;
  report["scenario"] = cfg.scenario;
  report["command"] = cfg.command;
  report["seed"] = cfg.seed;
  report["checks"] = Json::array();

  bool ok = false;
  if (cfg.command == "verify")
    ok = cmd_verify(sc, cfg, tol, report);
  else if (cfg.command == "polytope")
    ok = cmd_polytope(sc, cfg, tol, report, cfg.output);
  else if (cfg.command == "orbit-polytope")
    ok = cmd_orbit_polytope(sc, cfg, tol, report);
  else if (cfg.command == "flow")
    ok = cmd_flow(sc, cfg, tol, report, cfg.output);
  else if (cfg.command == "stratify")
    ok = cmd_stratify(sc, cfg, tol, report);
  else if (cfg.command == "kn")
    ok = cmd_kn(sc, cfg, tol, report);
  else if (cfg.command == "weights")
    ok = cmd_weights(sc, cfg, tol, report);
  else if (cfg.command == "reduce")
    ok = cmd_reduce(sc, cfg, tol, report, cfg.output);
  else if (cfg.command == "dh")
    ok = cmd_dh(sc, cfg, tol, report);
  else if (cfg.command == "moser")
    ok = cmd_moser(sc, cfg, tol, report);
  else if (cfg.command == "quotient")
    ok = cmd_quotient(sc, cfg, tol, report);
  else if (cfg.command == "ce")
    ok = cmd_ce(sc, cfg, tol, report);
  else
    throw gmm::Error(gmm::ErrorKind::ConfigError,
                     "unknown command: " + cfg.command);

  report["pass"] = ok;
  std::ofstream out(cfg.output + "report.json");
  out << report.dump(2) << "\n";
  std::cout << (ok ? "PASS " : "FAIL ") << cfg.scenario << " " << cfg.command
            << " -> " << cfg.output << "report.json\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized moment map toolkit runner"};
  std::string config_path;
  std::string out_prefix;
  std::string catalog_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> tol_overrides;
  int jobs = 1;
  auto* cfg_opt = app.add_option("--config", config_path, "config JSON path");
  app.add_option("--dump-catalog", catalog_path,
                 "write the scenario catalog as JSON and exit");
  auto* out_opt = app.add_option("--out", out_prefix, "output path prefix");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--tol", tol_overrides, "tolerance override KEY=VAL");
  app.add_option("--jobs", jobs, "parallel batch width (reports stay ordered)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  seed_set = seed_opt->count() > 0;

  if (!catalog_path.empty()) {
    auto& cat = gmm::register_scenarios();
    Json j;
    j["catalog_version"] = 1;
    j["scenarios"] = Json::array();
    for (const auto& name : cat.names()) {
      Scenario sc = cat.make(name, Json::object(), gmm::Tolerances{});
      Json entry;
      entry["name"] = name;
      entry["rank"] = sc.rank();
      entry["ambient_dim"] = sc.manifold.ambient_dim();
      entry["dim"] = sc.manifold.phys_dim();
      entry["compact"] = sc.compact;
      entry["complex"] = sc.is_complex;
      entry["has_moment_map"] = sc.has_psi();
      Json fixed = Json::array();
      for (const auto& fc : sc.fixed_components) {
        Json f;
        f["id"] = fc.id;
        f["psi"] = vec_json(fc.psi_value);
        fixed.push_back(f);
      }
      entry["fixed_components"] = fixed;
      entry["notes"] = sc.notes;
      j["scenarios"].push_back(entry);
    }
    std::ofstream out(catalog_path);
    out << j.dump(2) << "\n";
    return 0;
  }
  if (cfg_opt->count() == 0) {
    std::cerr << "error: --config is required\n";
    return 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in)
      throw gmm::Error(gmm::ErrorKind::ConfigError,
                       "cannot open config: " + config_path);
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw gmm::Error(gmm::ErrorKind::ConfigError,
                       std::string("malformed JSON: ") + e.what());
    }
    RunConfig cfg = parse_config(j);
    if (out_opt->count() > 0) cfg.output = out_prefix;
    if (seed_set) cfg.seed = seed;
    cfg.jobs = std::max(1, jobs);
    for (const std::string& kv : tol_overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw gmm::Error(gmm::ErrorKind::ConfigError, "--tol wants KEY=VAL");
      cfg.tolerance_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return run(cfg);
  } catch (const gmm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == gmm::ErrorKind::ConfigError ||
                   e.kind() == gmm::ErrorKind::UnknownScenario
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
