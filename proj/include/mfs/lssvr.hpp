#pragma once

#include <optional>

#include "mfs/gwo.hpp"
#include "mfs/kernels.hpp"
#include "mfs/types.hpp"

namespace mfs {

// Hyperparameter search box: per-coordinate bounds plus the log-scale mask
// fed to the optimizer.
struct SearchBox {
  std::vector<std::pair<double, double>> bounds;
  std::vector<bool> log_mask;
};

// Trained single-fidelity LS-SVR. Inputs are rescaled to the unit hypercube
// (per the training domain) before kernel evaluation and responses are
// standardized for the solve; alpha and bias are stored in original response
// units, so prediction is the plain kernel expansion and the stationarity
// identity y_i - yhat(x_i) = alpha_i / gamma holds as-is.
struct LssvrModel {
  Vector alpha;
  double bias = 0.0;
  KernelParams kernel;  // evaluated on unit-cube inputs
  double gamma = 0.0;
  SampleSet training;
  double y_mean = 0.0;
  double y_std = 1.0;
  Matrix unit_points;  // cached unit-cube training inputs

  Vector unit_of(const Vector& x) const;
};

// Solves the bordered system
//   [ K + I/gamma   1 ] [alpha]   [y]
//   [ 1^T           0 ] [  b  ] = [0]
// Throws IllConditionedError when the condition estimate exceeds 1e12.
LssvrModel train_lssvr(const SampleSet& data, const KernelParams& kernel,
                       double gamma);

// sum_i alpha_i K(x_i, x) + b
double predict_lssvr(const LssvrModel& model, const Vector& x);
Vector predict_lssvr_batch(const LssvrModel& model, const Matrix& points,
                           Exec exec = Exec::Parallel);

// Exact leave-one-out RMSE (original response units) via the bordered-system
// inverse: the held-out residual of sample i is alpha_i / inv(H)_ii, which
// matches retraining without sample i. Returns the penalty value
// (largest finite double) instead of throwing on unsolvable systems.
double lssvr_loo_rmse(const SampleSet& data, const KernelParams& kernel,
                      double gamma);

// Position layout for the hyperparameter search: [theta_1..theta_s, gamma],
// all log-scaled; sigma is fixed to 1 (redundant with gamma up to rescaling).
SearchBox default_lssvr_search(Index dim);

struct LssvrFitResult {
  std::optional<LssvrModel> model;  // empty when the best position is untrainable
  GwoResult search;
  bool all_penalty = false;
};

// Minimizes leave-one-out RMSE over the search box with the Grey Wolf
// Optimizer; candidate failures score as the penalty value, never abort the
// search. cfg.bounds / cfg.log_scale_mask are taken from `box`.
LssvrFitResult fit_lssvr(const SampleSet& data, const SearchBox& box,
                         GwoConfig cfg);

}  // namespace mfs
