#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace gmm {

// Index-ordered parallel map: body(i) writes only to slot i of its output,
// so results are identical for every job count; reductions happen after the
// join, in index order.
inline void parallel_for(int n, int jobs,
                         const std::function<void(int)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  jobs = std::min<int>(jobs, n);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([w, n, jobs, &body]() {
      for (int i = w; i < n; i += jobs) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace gmm
