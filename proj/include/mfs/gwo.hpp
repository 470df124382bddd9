#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "mfs/rng.hpp"
#include "mfs/types.hpp"

namespace mfs {

// Box-constrained Grey Wolf Optimizer configuration. Coordinates flagged in
// log_scale_mask are searched in log-space (their bounds must be positive);
// the objective always receives positions in the original units. A bound
// with low == high pins that coordinate.
struct GwoConfig {
  int population = 30;
  int iterations = 200;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> bounds;
  std::vector<bool> log_scale_mask;  // empty means all-linear
  Exec exec = Exec::Parallel;

  void validate() const;
};

struct GwoResult {
  Vector best_position;
  double best_score = 0.0;
  std::vector<double> history;  // best-so-far score after init and after each iteration
  long evaluations = 0;
};

// One draw of the encircling coefficients at iteration t of `total`:
// a = 2 (1 - t/total), A = 2 a r1 - a, C = 2 r2, with r1, r2 drawn per
// component in the order (r1[k], r2[k]) for k = 0..dim-1. gwo_minimize
// consumes the stream exactly this way, three calls per wolf per iteration
// (one per leader), so a recorded stream replays an update step.
struct CoefficientSet {
  Vector A;
  Vector C;
  double a = 0.0;
};
CoefficientSet coefficient_schedule(int t, int total, Index dim, Rng& rng);

// Minimizes the objective over the configured box. Wolves are initialized
// uniformly at random (log-uniformly where masked); each iteration re-ranks
// the three best solutions found so far as leaders and moves every wolf to
// the mean of the three leader-guided candidates, clamped to the box.
// Objective evaluations within an iteration are independent and run in
// parallel under Exec::Parallel with results identical to the serial path.
GwoResult gwo_minimize(const std::function<double(const Vector&)>& objective,
                       const GwoConfig& cfg);

}  // namespace mfs
