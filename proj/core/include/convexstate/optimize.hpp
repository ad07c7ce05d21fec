#pragma once

#include <cstddef>
#include <vector>

namespace convexstate {

struct CompassResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free compass (coordinate pattern) search minimising f. Each
/// sweep tries +-step along every coordinate and keeps improvements; the step
/// halves after a sweep without progress. Deterministic.
template <class F>
CompassResult compass_minimize(F&& f, std::vector<double> x, double step, double min_step,
                               std::size_t max_evaluations) {
  CompassResult r{x, f(x), 1};
  while (step >= min_step && r.evaluations < max_evaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < r.x.size() && r.evaluations < max_evaluations; ++i) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> trial = r.x;
        trial[i] += dir * step;
        const double v = f(trial);
        ++r.evaluations;
        if (v < r.value) {
          r.value = v;
          r.x = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return r;
}

}  // namespace convexstate
