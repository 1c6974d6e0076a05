#include "gmmtk/report.hpp"

namespace gmm {

Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["scenario"] = r.scenario;
  j["n_samples"] = r.n_samples;
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

}  // namespace gmm
