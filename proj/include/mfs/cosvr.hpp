#pragma once

#include <optional>

#include "mfs/gwo.hpp"
#include "mfs/kernels.hpp"
#include "mfs/lssvr.hpp"
#include "mfs/types.hpp"

namespace mfs {

// Paired LF and HF training samples sharing dimension and domain box.
struct MultiFidelityData {
  SampleSet lf;
  SampleSet hf;

  MultiFidelityData() = default;
  MultiFidelityData(SampleSet lf_, SampleSet hf_)
      : lf(std::move(lf_)), hf(std::move(hf_)) {
    validate();
  }

  Index dimension() const { return lf.dimension(); }
  Index lf_count() const { return lf.size(); }
  Index hf_count() const { return hf.size(); }

  void validate() const {
    lf.validate();
    hf.validate();
    if (lf.dimension() != hf.dimension())
      throw DimensionError("multi-fidelity data: LF/HF dimensions differ");
    if (!(lf.domain == hf.domain))
      throw ConfigError("multi-fidelity data: LF/HF domain boxes differ");
    if (lf.size() < 1) throw ConfigError("multi-fidelity data: need >= 1 LF sample");
    if (hf.size() < 2) throw ConfigError("multi-fidelity data: need >= 2 HF samples");
  }
};

// Trained Co_SVR model. Same normalization contract as LssvrModel: kernels
// act on unit-cube inputs, alpha/bias are in original response units, and
// the stacked residual identity y_i - yhat(x_i) = alpha_i / gamma holds for
// every training row (LF rows first, then HF rows).
struct CoSvrModel {
  Vector alpha;  // length p + q
  double bias = 0.0;
  CoSvrHyperparams hp;  // theta on unit-cube inputs
  MultiFidelityData training;
  double y_mean = 0.0;
  double y_std = 1.0;
  Matrix unit_lf;
  Matrix unit_hf;
};

// Assembles the multi-fidelity kernel over the combined samples and solves
// the bordered system with the 1/gamma ridge for [y_L; y_H].
CoSvrModel train_cosvr(const MultiFidelityData& data,
                       const CoSvrHyperparams& hp);

// sum_i alpha_i k_i(x) + b with k the HF-query cross vector.
double predict_cosvr(const CoSvrModel& model, const Vector& x);
Vector predict_cosvr_batch(const CoSvrModel& model, const Matrix& points,
                           Exec exec = Exec::Parallel);

// RMSE over the HF training points, evaluated through the residual identity
// alpha_i = gamma e_i (algebraically equal to predicting each HF point).
// Training failures return the penalty value instead of throwing.
double cosvr_cost(const MultiFidelityData& data, const CoSvrHyperparams& hp);

// Leave-one-HF-out RMSE: optional search objective for studies where the
// training-error objective overfits the discrepancy length-scales.
double cosvr_loo_rmse(const MultiFidelityData& data,
                      const CoSvrHyperparams& hp);

// Position layout [rho, sigma_l, sigma_d, theta_l (s), theta_d (s)];
// rho in [0,1] linear, scales and length-scales in [1e-3, 1e3] log-scaled.
SearchBox default_cosvr_search(Index dim);

enum class CosvrObjective { TrainingRmse, LeaveOneOutRmse };

struct CosvrFitResult {
  std::optional<CoSvrModel> model;  // empty when the best position is untrainable
  GwoResult search;
  bool all_penalty = false;
};

// Tunes the kernel parameters with the Grey Wolf Optimizer at fixed gamma.
// cfg.bounds / cfg.log_scale_mask are taken from `box`.
CosvrFitResult fit_cosvr(const MultiFidelityData& data, const SearchBox& box,
                         GwoConfig cfg, double gamma = 1e4,
                         CosvrObjective objective = CosvrObjective::TrainingRmse);

}  // namespace mfs
