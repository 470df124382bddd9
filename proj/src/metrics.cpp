#include "mfs/metrics.hpp"

#include <cmath>

namespace mfs {

double r_squared(const Vector& truth, const Vector& pred) {
  if (truth.size() != pred.size())
    throw DimensionError("r_squared: vector lengths differ");
  if (truth.size() < 2) throw DegenerateMetricError("r_squared: need >= 2 samples");
  const double mean = truth.mean();
  double ss_res = 0.0, ss_tot = 0.0;
  for (Index i = 0; i < truth.size(); ++i) {
    const double r = truth[i] - pred[i];
    const double d = truth[i] - mean;
    ss_res += r * r;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0)
    throw DegenerateMetricError("r_squared: constant truth vector");
  return 1.0 - ss_res / ss_tot;
}

double pearson_r2(const Vector& y_h, const Vector& y_l) {
  if (y_h.size() != y_l.size())
    throw DimensionError("pearson_r2: vector lengths differ");
  if (y_h.size() < 2) throw DegenerateMetricError("pearson_r2: need >= 2 samples");
  const double mh = y_h.mean();
  const double ml = y_l.mean();
  double num = 0.0, dh = 0.0, dl = 0.0;
  for (Index i = 0; i < y_h.size(); ++i) {
    const double a = y_h[i] - mh;
    const double b = y_l[i] - ml;
    num += a * b;
    dh += a * a;
    dl += b * b;
  }
  if (dh == 0.0 || dl == 0.0)
    throw DegenerateMetricError("pearson_r2: constant input vector");
  const double r = num / (std::sqrt(dh) * std::sqrt(dl));
  return r * r;
}

double welch_t(const AccuracySummary& a, const AccuracySummary& b) {
  if (a.n_repeats < 2 || b.n_repeats < 2)
    throw DegenerateMetricError("welch_t: need n_repeats >= 2 on both sides");
  const double var = a.std_r2 * a.std_r2 / a.n_repeats +
                     b.std_r2 * b.std_r2 / b.n_repeats;
  if (var <= 0.0)
    throw DegenerateMetricError("welch_t: zero combined variance");
  return (a.mean_r2 - b.mean_r2) / std::sqrt(var);
}

AccuracySummary summarize(const std::vector<double>& per_repeat) {
  if (per_repeat.empty()) throw ConfigError("summarize: empty list");
  AccuracySummary s;
  s.per_repeat = per_repeat;
  s.n_repeats = static_cast<int>(per_repeat.size());
  double sum = 0.0;
  for (double v : per_repeat) sum += v;
  s.mean_r2 = sum / s.n_repeats;
  if (s.n_repeats > 1) {
    double ss = 0.0;
    for (double v : per_repeat) {
      const double d = v - s.mean_r2;
      ss += d * d;
    }
    s.std_r2 = std::sqrt(ss / (s.n_repeats - 1));
  }
  return s;
}

}  // namespace mfs
