#pragma once

#include <functional>
#include <vector>

#include "gmmtk/manifold.hpp"

namespace gmm {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-13;
  double h_max = 1.0;
};

struct OdeSample {
  double t;
  Vec x;
};

// Stop callback: invoked after each accepted (projected) step; returning
// true ends the integration.
using StopFn = std::function<bool(double, const Vec&)>;

struct OdeResult {
  std::vector<OdeSample> samples;  // includes the initial state
  bool stopped_by_callback = false;
  bool reached_t_end = false;
};

// Dormand-Prince 5(4) with PI step control; accepted states are projected
// back to M before being recorded. Throws StepCollapse below h_min.
OdeResult integrate_ode(const EmbeddedManifold& M,
                        const std::function<Vec(const Vec&)>& field,
                        const Vec& x0, double t_end, const OdeOptions& opts,
                        const StopFn& stop = nullptr);

}  // namespace gmm
