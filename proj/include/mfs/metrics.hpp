#pragma once

#include <vector>

#include "mfs/types.hpp"

namespace mfs {

// Mean and sample standard deviation of R^2 over repeated DoEs.
struct AccuracySummary {
  double mean_r2 = 0.0;
  double std_r2 = 0.0;
  int n_repeats = 0;
  std::vector<double> per_repeat;
};

// Coefficient of determination: 1 - SS_res / SS_tot. Throws
// DegenerateMetricError when the truth vector is constant.
double r_squared(const Vector& truth, const Vector& pred);

// Squared sample Pearson correlation between HF and LF responses.
double pearson_r2(const Vector& y_h, const Vector& y_l);

// Two-sample t statistic (mean_a - mean_b) / sqrt(s_a^2/n_a + s_b^2/n_b),
// reported against the fixed 1.65 threshold used for the model comparisons.
double welch_t(const AccuracySummary& a, const AccuracySummary& b);

// Sample mean / standard deviation (n-1 divisor; std 0 for a single value).
AccuracySummary summarize(const std::vector<double>& per_repeat);

}  // namespace mfs
