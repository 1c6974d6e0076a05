// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gmmtk/convexity.hpp"
#include "gmmtk/cplx.hpp"
#include "gmmtk/flow.hpp"
#include "gmmtk/kempfness.hpp"
#include "gmmtk/moment.hpp"
#include "gmmtk/reduction.hpp"
#include "gmmtk/scenario.hpp"

using namespace gmm;

namespace {

int failures = 0;

void report_line(int id, const std::string& name, bool pass,
                 const std::string& detail, double seconds) {
  std::printf("[%s] C%02d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int id, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  report_line(id, name, pass, detail, secs);
}

FlowOptions flow_opts(const Tolerances& tol) {
  FlowOptions o;
  o.rtol = tol.ode_rtol;
  o.atol = tol.ode_atol;
  o.eps_crit = tol.eps_crit;
  o.window = tol.crit_window;
  o.t_max = tol.t_max;
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  Tolerances tol;
  register_scenarios();

  // C1 -- momentumly closed: max |d(i_{xi_M} omega)| over 1e3 samples <= 1e-6.
  run(1, "momentumly-closed", [&]() {
    double worst = 0.0, slowest = 0.0;
    for (const char* name : {"diag-c2", "hopf-coupling", "calabi-eckmann"}) {
      auto t0 = std::chrono::steady_clock::now();
      Rng rng(101);
      auto sc = make_scenario(name);
      auto rep = check_momentumly_closed(sc, 1000, rng, 1e-6);
      slowest = std::max(
          slowest,
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count());
      worst = std::max(worst, rep.max_deviation);
      if (!rep.pass) return std::make_pair(false, std::string(name));
    }
    bool pass = worst <= 1e-6 && slowest <= 30.0;  // budget: 30 s / scenario
    return std::make_pair(pass, "max " + fmt(worst) + " <= 1e-6, slowest " +
                                    fmt(slowest) + "s <= 30s");
  });

  // C2 -- gradient identity on every scenario with a Hermitian triple.
  run(2, "gradient-identity", [&]() {
    double worst = 0.0;
    for (const char* name :
         {"s1-rotation-s2", "diag-c2", "torus-cp1", "cp2-weights",
          "t2-product", "calabi-eckmann", "toric-c2-quotient"}) {
      Rng rng(102);
      auto sc = make_scenario(name);
      MomentMapEvaluator closed{MomentMapEvaluator::Provenance::ClosedForm,
                                sc.psi, Vec(), Vec()};
      auto rep = check_gradient_identity(sc, closed, 1000, rng, 1e-6);
      worst = std::max(worst, rep.max_deviation);
      if (!rep.pass) return std::make_pair(false, std::string(name));
    }
    return std::make_pair(worst <= 1e-6, "max " + fmt(worst) + " <= 1e-6");
  });

  // C3 -- differential image rank and annihilator angle at 200 stratified
  // samples per scenario.
  run(3, "differential-image", [&]() {
    double worst_angle = 0.0;
    for (const char* name : {"diag-c2", "cp2-weights"}) {
      Rng rng(103);
      auto sc = make_scenario(name);
      MomentMapEvaluator closed{MomentMapEvaluator::Provenance::ClosedForm,
                                sc.psi, Vec(), Vec()};
      int done = 0;
      size_t which = 0;
      while (done < 200) {
        Vec x = sc.stratum_samplers[which % sc.stratum_samplers.size()](rng);
        ++which;
        auto rep = moment_differential_image(sc, closed,
                                             ManifoldPoint{x, 0.0}, 1e-4);
        if (rep.rank != rep.expected_rank)
          return std::make_pair(false, std::string(name) + ": rank " +
                                           std::to_string(rep.rank) + " != " +
                                           std::to_string(rep.expected_rank));
        worst_angle = std::max(worst_angle, rep.max_principal_angle);
        ++done;
      }
    }
    return std::make_pair(worst_angle <= 1e-4,
                          "angle " + fmt(worst_angle) + " <= 1e-4 rad");
  });

  // C4 -- abelian convexity: zero containment violations at margin 1e-6 over
  // 1e3 samples, sampled hull within Hausdorff 1e-3.
  run(4, "abelian-convexity", [&]() {
    auto t0 = std::chrono::steady_clock::now();
    double worst_violation = 0.0, worst_hausdorff = 0.0;
    for (const char* name :
         {"s1-rotation-s2", "torus-cp1", "cp2-weights", "t2-product"}) {
      Rng rng(104);
      auto sc = make_scenario(name);
      auto rep = moment_polytope(sc, 1000, rng, 1e-6, 1e-3);
      worst_violation = std::max(worst_violation, rep.max_violation);
      worst_hausdorff = std::max(worst_hausdorff, rep.hausdorff);
      if (!rep.pass) return std::make_pair(false, std::string(name));
    }
    double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool pass = total <= 60.0;  // budget: 60 s total
    return std::make_pair(pass, "violation " + fmt(worst_violation) +
                                    ", hausdorff " + fmt(worst_hausdorff) +
                                    ", " + fmt(total) + "s <= 60s");
  });

  // C5 -- orbit-closure polytopes on cp2 match the weight-support hull.
  run(5, "orbit-closure-polytope", [&]() {
    Rng rng(105);
    auto sc = make_scenario("cp2-weights");
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Vec m = sc.sample(rng);
      auto rep = orbit_closure_polytope(sc, m, 30, rng, 1e-6);
      // oracle: hull of the weights over the support of m
      std::vector<double> support;
      for (int j = 0; j < 3; ++j)
        if (std::abs(cplx::coord(m, j)) > 1e-9)
          support.push_back(static_cast<double>(j));
      double lo = *std::min_element(support.begin(), support.end());
      double hi = *std::max_element(support.begin(), support.end());
      std::vector<double> got;
      for (const Vec& v : rep.polytope.vertices) got.push_back(v[0]);
      std::sort(got.begin(), got.end());
      if (got.size() != 2)
        return std::make_pair(false, std::string("vertex count"));
      worst = std::max({worst, std::abs(got.front() - lo),
                        std::abs(got.back() - hi)});
    }
    return std::make_pair(worst <= 1e-4, "vertex error " + fmt(worst));
  });

  // C6 -- stratification: oracle agreement >= 99% of 500 convergent samples,
  // even Hessian indices, exactly one open stratum.
  run(6, "stratification", [&]() {
    for (const char* name : {"s1-rotation-s2", "cp2-weights"}) {
      Rng rng(106);
      auto sc = make_scenario(name);
      auto opts = flow_opts(tol);
      int agree = 0, convergent = 0;
      for (int i = 0; i < 500; ++i) {
        Vec x = sc.stratum_samplers[i % sc.stratum_samplers.size()](rng);
        try {
          auto label = stratum_label(sc, x, opts);
          int idx = label_index(sc, label.lambda, tol.r_cluster);
          ++convergent;
          if (idx == sc.basin_oracle(x)) ++agree;
        } catch (const Error&) {
        }
      }
      if (convergent == 0 ||
          static_cast<double>(agree) / convergent < 0.99)
        return std::make_pair(false,
                              std::string(name) + ": agreement " +
                                  std::to_string(agree) + "/" +
                                  std::to_string(convergent));
      // Hessian indices at the built-in critical points are even.
      for (const auto& fc : sc.fixed_components) {
        auto rep = hessian_index(sc, FlowFunctional::norm_square(),
                                 ManifoldPoint{fc.representative, 0.0});
        if (rep.hessian_index % 2 != 0)
          return std::make_pair(false, std::string(name) + ": odd index");
      }
      // Exactly one open stratum among generic samples.
      std::vector<int> seen;
      for (int i = 0; i < 200; ++i) {
        Vec x = sc.sample(rng);
        auto label = stratum_label(sc, x, opts);
        int idx = label_index(sc, label.lambda, tol.r_cluster);
        if (idx >= 0 &&
            std::find(seen.begin(), seen.end(), idx) == seen.end())
          seen.push_back(idx);
      }
      if (seen.size() != 1)
        return std::make_pair(false, std::string(name) + ": " +
                                         std::to_string(seen.size()) +
                                         " open strata");
    }
    return std::make_pair(true, std::string(">=99% agreement, even indices"));
  });

  // C7 -- Kempf-Ness convexity and cocycle over 100 random pairs per
  // scenario.
  run(7, "kn-convexity-cocycle", [&]() {
    double worst_convex = 0.0, worst_cocycle = 0.0;
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(-1.5 + 0.25 * i);
    for (const char* name : {"diag-c2", "s1-rotation-s2", "torus-cp1",
                             "cp2-weights", "t2-product"}) {
      Rng rng(107);
      auto sc = make_scenario(name);
      for (int i = 0; i < 100; ++i) {
        Vec m = sc.sample(rng);
        Vec xi = rng.sphere(sc.rank());
        auto conv = kn_convexity_check(sc, m, xi, grid, 1e-8);
        worst_convex = std::min(worst_convex, conv.min_second_difference);
        auto coc = kn_cocycle_check(sc, m, Vec(0.7 * rng.sphere(sc.rank())),
                                    Vec(0.7 * rng.sphere(sc.rank())), 1e-8);
        worst_cocycle = std::max(worst_cocycle, coc.residual);
      }
    }
    bool pass = worst_convex >= -1e-8 && worst_cocycle <= 1e-8;
    return std::make_pair(pass, "2nd-diff " + fmt(worst_convex) +
                                    ", cocycle " + fmt(worst_cocycle));
  });

  // C8 -- moment-weight equality and the weight/label match on 100 unstable
  // samples of cp2.
  run(8, "moment-weight-equality", [&]() {
    Rng rng(108);
    auto sc = make_scenario("cp2-weights");
    auto opts = flow_opts(tol);
    double worst_eq = 0.0, worst_label = 0.0;
    for (int i = 0; i < 100; ++i) {
      Vec m = sc.stratum_samplers[1 + (i % 2)](rng);  // unstable loci
      auto rep = moment_weight_check(sc, m, opts, 1e-4);
      worst_eq = std::max(worst_eq, rep.equality_gap);
      worst_label = std::max(worst_label, rep.label_gap);
    }
    bool pass = worst_eq <= 1e-4 && worst_label <= tol.r_cluster;
    return std::make_pair(pass, "equality " + fmt(worst_eq) + ", label " +
                                    fmt(worst_label));
  });

  // C9 -- Calabi-Eckmann reduction vs the compact model for tau in {i, 1+i}
  // and three levels, 200 matched points each.
  run(9, "ce-reduction-fidelity", [&]() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (auto tau : {std::complex<double>(0, 1), std::complex<double>(1, 1)}) {
      for (double c : {-0.7, 0.0, 1.1}) {
        Rng rng(109);
        CalabiEckmannParams p;
        p.tau = tau;
        auto rep = ce_verify_reduction(p, c, 200, rng, 1e-5);
        worst = std::max(
            {worst, rep.max_form_dev, rep.max_metric_dev, rep.max_J_dev});
        if (!rep.pass)
          return std::make_pair(false, "tau=(" + fmt(tau.real()) + "," +
                                           fmt(tau.imag()) + "), c=" + fmt(c));
      }
    }
    double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool pass = worst <= 1e-5 && total <= 120.0;  // budget: 120 s
    return std::make_pair(pass, "max dev " + fmt(worst) + " <= 1e-5, " +
                                    fmt(total) + "s <= 120s");
  });

  // C10 -- minimal coupling audits on the Hopf bundle.
  run(10, "minimal-coupling", [&]() {
    Rng rng(110);
    auto sc = make_scenario("hopf-coupling");
    auto mc = minimal_coupling_form(*sc.bundle, tol);
    auto closed = check_momentumly_closed(sc, 300, rng, 1e-6);
    if (!closed.pass) return std::make_pair(false, std::string("not closed"));
    auto nd = coupling_nondegenerate_on_slab(mc, 0.2, 200, rng, tol.sigma_min);
    if (!nd.pass) return std::make_pair(false, std::string("degenerate"));
    auto def = check_defining_identity(mc.product, mc.action, mc.omega, mc.psi,
                                       sc.sample, 300, rng, 1e-6);
    if (!def.pass) return std::make_pair(false, std::string("psi identity"));
    return std::make_pair(true, "closed " + fmt(closed.max_deviation) +
                                    ", sigma_min " + fmt(nd.max_deviation) +
                                    ", d-psi " + fmt(def.max_deviation));
  });

  // C11 -- Duistermaat-Heckman on diag-c2: linear fit and slope vs degree.
  run(11, "duistermaat-heckman", [&]() {
    auto sc = make_scenario("diag-c2");
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) grid.push_back(-0.9 + 0.1 * i);
    auto rep = dh_variation(sc, grid, 1e-3, 0.01);
    bool pass = rep.rel_residual <= 1e-3 && rep.slope_vs_degree <= 0.01;
    return std::make_pair(pass, "residual " + fmt(rep.rel_residual) +
                                    ", slope gap " + fmt(rep.slope_vs_degree) +
                                    ", deg " + fmt(rep.degree));
  });

  // C12 -- Moser flows for the three built-in pairs at radius 0.1.
  run(12, "moser-flow", [&]() {
    Rng rng(112);
    auto sc = make_scenario("diag-c2");
    TwoFormFn omega0 = sc.triple->omega.eval;
    TwoFormFn conformal = [omega0](const Vec& x, const Vec& u, const Vec& v) {
      return (1.0 + 0.5 * x.squaredNorm()) * omega0(x, u, v);
    };
    TwoFormFn exact = [omega0](const Vec& x, const Vec& u, const Vec& v) {
      double a_u = 2.0 * x.dot(u) * cplx::times_i(x).dot(v) +
                   x.squaredNorm() * cplx::times_i(u).dot(v);
      double a_v = 2.0 * x.dot(v) * cplx::times_i(x).dot(u) +
                   x.squaredNorm() * cplx::times_i(v).dot(u);
      return omega0(x, u, v) + (a_u - a_v);
    };
    double worst = 0.0;
    for (const TwoFormFn& target : {omega0, conformal, exact}) {
      auto rep = moser_flow(sc.manifold, sc.action, omega0, target, 0.1, 10,
                            rng, 1e-5);
      worst = std::max(worst, rep.max_identity_dev);
      if (!rep.pass) return std::make_pair(false, fmt(rep.max_identity_dev));
    }
    return std::make_pair(worst <= 1e-5, "max dev " + fmt(worst) + " <= 1e-5");
  });

  // C13 -- complex quotient equals the reduction on the toric scenario.
  run(13, "quotient-reduction", [&]() {
    Rng rng(113);
    auto rep = quotient_scenario_check(50, rng, 1e-6);
    bool pass = rep.pass;
    return std::make_pair(pass, "J " + fmt(rep.max_J_dev) + ", form " +
                                    fmt(rep.max_form_dev) + ", area " +
                                    fmt(rep.area));
  });

  // C14 -- determinism: identical seeds give byte-identical reports.
  run(14, "determinism", [&]() {
    auto run_suite = [&]() -> std::string {
      Json j;
      Rng rng(114);
      auto sc = make_scenario("cp2-weights");
      auto poly = moment_polytope(sc, 200, rng, 1e-6, 1e-3);
      j["violation"] = poly.max_violation;
      j["hausdorff"] = poly.hausdorff;
      auto opts = flow_opts(tol);
      Json labels = Json::array();
      for (int i = 0; i < 25; ++i) {
        auto label = stratum_label(sc, sc.sample(rng), opts);
        Json rec;
        rec["lambda"] = label.lambda[0];
        rec["norm"] = label.norm;
        labels.push_back(rec);
      }
      j["labels"] = labels;
      auto weight = hesselink_weight(sc, sc.stratum_samplers[1](rng));
      j["inf_slope"] = weight.inf_slope;
      return j.dump();
    };
    std::string a = run_suite();
    std::string b = run_suite();
    bool pass = (a == b) && !a.empty();
    return std::make_pair(pass, pass ? "byte-identical reports"
                                     : "reports differ");
  });

  if (failures == 0)
    std::printf("all 14 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
