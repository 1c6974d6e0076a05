#include "gmmtk/ode.hpp"

#include <algorithm>
#include <cmath>

namespace gmm {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_ode(const EmbeddedManifold& M,
                        const std::function<Vec(const Vec&)>& field,
                        const Vec& x0, double t_end, const OdeOptions& opts,
                        const StopFn& stop) {
  OdeResult result;
  Vec x = M.has_constraints() ? project_to_manifold(x0, M).coords : x0;
  double t = 0.0;
  result.samples.push_back({t, x});

  double h = std::min(opts.h_init, t_end);
  Vec k1 = field(x);
  double prev_err = 1.0;

  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h < opts.h_min)
      throw Error(ErrorKind::StepCollapse,
                  "step size collapsed at t = " + std::to_string(t));

    Vec k2 = field(x + h * (a21 * k1));
    Vec k3 = field(x + h * (a31 * k1 + a32 * k2));
    Vec k4 = field(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Vec k5 = field(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Vec k6 = field(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                            a65 * k5));
    Vec x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Vec k7 = field(x5);
    Vec err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      double sc = opts.atol + opts.rtol * std::max(std::abs(x[i]),
                                                   std::abs(x5[i]));
      err = std::max(err, std::abs(err_vec[i]) / sc);
    }

    if (err <= 1.0) {
      t += h;
      x = M.has_constraints() ? project_to_manifold(x5, M).coords : x5;
      result.samples.push_back({t, x});
      k1 = field(x);
      if (stop && stop(t, x)) {
        result.stopped_by_callback = true;
        return result;
      }
      // PI controller.
      double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                   std::pow(prev_err > 0 ? prev_err : 1e-10, 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, 5.0);
      h = std::min(h * fac, opts.h_max);
      prev_err = err;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  result.reached_t_end = true;
  return result;
}

}  // namespace gmm
