#include "mfs/cosvr.hpp"

#include <cmath>

#include "mfs/doe.hpp"
#include "mfs/solve.hpp"

namespace mfs {

namespace {

Vector stacked_standardized(const MultiFidelityData& data, double& mean,
                            double& sd) {
  Vector y(data.lf_count() + data.hf_count());
  y.head(data.lf_count()) = data.lf.responses;
  y.tail(data.hf_count()) = data.hf.responses;
  standardize(y, mean, sd);
  return (y.array() - mean) / sd;
}

}  // namespace

CoSvrModel train_cosvr(const MultiFidelityData& data,
                       const CoSvrHyperparams& hp) {
  data.validate();
  hp.validate(data.dimension());

  CoSvrModel model;
  model.hp = hp;
  model.training = data;
  model.unit_lf = to_unit(data.lf.points, data.lf.domain);
  model.unit_hf = to_unit(data.hf.points, data.hf.domain);

  const Vector y_std = stacked_standardized(data, model.y_mean, model.y_std);
  const MfsKernelMatrix K = assemble_mfs_kernel(model.unit_lf, model.unit_hf, hp);
  BorderedSolution sol = solve_bordered(K.values, y_std, hp.gamma);
  if (!sol.ok())
    throw IllConditionedError("train_cosvr: system too ill-conditioned (estimate " +
                                  std::to_string(sol.condition) + ") at " +
                                  hp.describe(),
                              sol.condition);
  model.alpha = model.y_std * sol.alpha;
  model.bias = model.y_std * sol.bias + model.y_mean;
  return model;
}

double predict_cosvr(const CoSvrModel& model, const Vector& x) {
  if (x.size() != model.training.dimension())
    throw DimensionError("predict_cosvr: point dimension mismatch");
  const Vector u = to_unit(x, model.training.lf.domain);
  const Vector k = mfs_cross_vector(u, model.unit_lf, model.unit_hf, model.hp);
  return model.alpha.dot(k) + model.bias;
}

Vector predict_cosvr_batch(const CoSvrModel& model, const Matrix& points,
                           Exec exec) {
  Vector out(points.rows());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < points.rows(); ++i)
      out[i] = predict_cosvr(model, points.row(i).transpose());
  } else {
    for (Index i = 0; i < points.rows(); ++i)
      out[i] = predict_cosvr(model, points.row(i).transpose());
  }
  return out;
}

double cosvr_cost(const MultiFidelityData& data, const CoSvrHyperparams& hp) {
  const Index p = data.lf_count();
  const Index q = data.hf_count();
  double mean, sd;
  const Vector y_std = stacked_standardized(data, mean, sd);

  Matrix unit_lf = to_unit(data.lf.points, data.lf.domain);
  Matrix unit_hf = to_unit(data.hf.points, data.hf.domain);
  MfsKernelMatrix K;
  try {
    K = assemble_mfs_kernel(unit_lf, unit_hf, hp, Exec::Serial);
  } catch (const Error&) {
    return kPenaltyScore;
  }
  const BorderedSolution sol = solve_bordered(K.values, y_std, hp.gamma);
  if (!sol.ok()) return kPenaltyScore;

  // Residual identity: the HF training residual of row p+j is alpha_{p+j}/gamma.
  double ss = 0.0;
  for (Index j = 0; j < q; ++j) {
    const double r = sol.alpha[p + j] / hp.gamma;
    ss += r * r;
  }
  const double rmse = sd * std::sqrt(ss / static_cast<double>(q));
  return std::isfinite(rmse) ? rmse : kPenaltyScore;
}

double cosvr_loo_rmse(const MultiFidelityData& data,
                      const CoSvrHyperparams& hp) {
  const Index q = data.hf_count();
  if (q < 3) return kPenaltyScore;  // folds must leave >= 2 HF samples
  double ss = 0.0;
  for (Index j = 0; j < q; ++j) {
    MultiFidelityData fold = data;
    Matrix pts(q - 1, data.dimension());
    Vector resp(q - 1);
    Index r = 0;
    for (Index i = 0; i < q; ++i) {
      if (i == j) continue;
      pts.row(r) = data.hf.points.row(i);
      resp[r] = data.hf.responses[i];
      ++r;
    }
    fold.hf.points = std::move(pts);
    fold.hf.responses = std::move(resp);
    try {
      const CoSvrModel m = train_cosvr(fold, hp);
      const double res = data.hf.responses[j] -
                         predict_cosvr(m, data.hf.points.row(j).transpose());
      ss += res * res;
    } catch (const Error&) {
      return kPenaltyScore;
    }
  }
  const double rmse = std::sqrt(ss / static_cast<double>(q));
  return std::isfinite(rmse) ? rmse : kPenaltyScore;
}

SearchBox default_cosvr_search(Index dim) {
  SearchBox box;
  box.bounds.push_back({0.0, 1.0});  // rho
  box.bounds.push_back({1e-3, 1e3});
  box.bounds.push_back({1e-3, 1e3});
  for (Index k = 0; k < 2 * dim; ++k) box.bounds.push_back({1e-3, 1e3});
  box.log_mask.assign(box.bounds.size(), true);
  box.log_mask[0] = false;
  return box;
}

CosvrFitResult fit_cosvr(const MultiFidelityData& data, const SearchBox& box,
                         GwoConfig cfg, double gamma,
                         CosvrObjective objective) {
  data.validate();
  const Index s = data.dimension();
  if (static_cast<Index>(box.bounds.size()) != 3 + 2 * s)
    throw ConfigError("fit_cosvr: search box must cover rho, sigmas and thetas");
  cfg.bounds = box.bounds;
  cfg.log_scale_mask = box.log_mask;

  auto unpack = [s, gamma](const Vector& pos) {
    CoSvrHyperparams hp;
    hp.rho = pos[0];
    hp.sigma_l = pos[1];
    hp.sigma_d = pos[2];
    hp.theta_l = pos.segment(3, s);
    hp.theta_d = pos.segment(3 + s, s);
    hp.gamma = gamma;
    return hp;
  };

  auto score = [&](const Vector& pos) {
    const CoSvrHyperparams hp = unpack(pos);
    return objective == CosvrObjective::TrainingRmse ? cosvr_cost(data, hp)
                                                     : cosvr_loo_rmse(data, hp);
  };

  CosvrFitResult result;
  result.search = gwo_minimize(score, cfg);
  result.all_penalty = !(result.search.best_score < kPenaltyScore);
  try {
    result.model = train_cosvr(data, unpack(result.search.best_position));
  } catch (const IllConditionedError&) {
    result.model.reset();
  }
  return result;
}

}  // namespace mfs
