#pragma once

#include <string>

#include "json.hpp"

namespace gmm {

using Json = nlohmann::ordered_json;

// One verification record; serialized into every CLI report.
struct CheckReport {
  std::string check;
  std::string scenario;
  int n_samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Json to_json(const CheckReport& r);

}  // namespace gmm
