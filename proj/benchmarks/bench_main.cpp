#include <benchmark/benchmark.h>

#include "gmmtk/flow.hpp"
#include "gmmtk/kempfness.hpp"
#include "gmmtk/moment.hpp"
#include "gmmtk/scenario.hpp"

using namespace gmm;

namespace {

FlowOptions flow_opts() {
  Tolerances tol;
  FlowOptions o;
  o.rtol = tol.ode_rtol;
  o.atol = tol.ode_atol;
  o.eps_crit = tol.eps_crit;
  o.window = tol.crit_window;
  o.t_max = tol.t_max;
  return o;
}

void BM_StratumLabel(benchmark::State& state) {
  auto sc = make_scenario("cp2-weights");
  Rng rng(1);
  auto opts = flow_opts();
  std::vector<Vec> starts;
  for (int i = 0; i < 64; ++i) starts.push_back(sc.sample(rng));
  size_t i = 0;
  for (auto _ : state) {
    auto label = stratum_label(sc, starts[i++ % starts.size()], opts);
    benchmark::DoNotOptimize(label.norm);
  }
}
BENCHMARK(BM_StratumLabel)->Unit(benchmark::kMillisecond);

void BM_MomentumlyClosedSample(benchmark::State& state) {
  auto sc = make_scenario("calabi-eckmann");
  Rng rng(2);
  for (auto _ : state) {
    auto rep = check_momentumly_closed(sc, 1, rng, 1e-6);
    benchmark::DoNotOptimize(rep.max_deviation);
  }
}
BENCHMARK(BM_MomentumlyClosedSample)->Unit(benchmark::kMicrosecond);

void BM_MomentPathIntegral(benchmark::State& state) {
  auto sc = make_scenario("s1-rotation-s2");
  Rng rng(3);
  auto ev = moment_from_form(sc, sc.base_point, sc.base_value, 0, rng);
  std::vector<Vec> points;
  for (int i = 0; i < 32; ++i) points.push_back(sc.sample(rng));
  size_t i = 0;
  for (auto _ : state) {
    Vec v = ev.psi(points[i++ % points.size()]);
    benchmark::DoNotOptimize(v[0]);
  }
}
BENCHMARK(BM_MomentPathIntegral)->Unit(benchmark::kMicrosecond);

void BM_KempfNessValue(benchmark::State& state) {
  auto sc = make_scenario("cp2-weights");
  Rng rng(4);
  std::vector<Vec> points;
  for (int i = 0; i < 32; ++i) points.push_back(sc.sample(rng));
  size_t i = 0;
  for (auto _ : state) {
    double v = kn_value(sc, points[i++ % points.size()], Vec::Constant(1, 0.7));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_KempfNessValue)->Unit(benchmark::kMicrosecond);

void BM_CEMetricEval(benchmark::State& state) {
  auto sc = make_scenario("calabi-eckmann");
  Rng rng(5);
  Vec x = sc.sample(rng);
  Vec u = random_tangent(sc.manifold, x, rng);
  Vec v = random_tangent(sc.manifold, x, rng);
  for (auto _ : state) {
    double g = sc.triple->g(x, u, v);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_CEMetricEval)->Unit(benchmark::kNanosecond);

}  // namespace

BENCHMARK_MAIN();
