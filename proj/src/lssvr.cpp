#include "mfs/lssvr.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mfs/doe.hpp"
#include "mfs/solve.hpp"

namespace mfs {

Vector LssvrModel::unit_of(const Vector& x) const {
  if (x.size() != training.dimension())
    throw DimensionError("lssvr predict: point dimension mismatch");
  return to_unit(x, training.domain);
}

LssvrModel train_lssvr(const SampleSet& data, const KernelParams& kernel,
                       double gamma) {
  if (data.size() < 2) throw ConfigError("train_lssvr: need at least 2 samples");
  if (!(gamma > 0.0)) throw ConfigError("train_lssvr: gamma must be > 0");
  kernel.validate(data.dimension());

  LssvrModel model;
  model.kernel = kernel;
  model.gamma = gamma;
  model.training = data;
  model.unit_points = to_unit(data.points, data.domain);
  standardize(data.responses, model.y_mean, model.y_std);

  const Vector y_std = (data.responses.array() - model.y_mean) / model.y_std;
  const Matrix K = gauss_gram(model.unit_points, kernel);
  BorderedSolution sol = solve_bordered(K, y_std, gamma);
  if (!sol.ok()) {
    std::ostringstream os;
    os << "train_lssvr: system too ill-conditioned (estimate "
       << sol.condition << ") at gamma=" << gamma << " sigma=" << kernel.sigma
       << " theta=[";
    for (Index k = 0; k < kernel.theta.size(); ++k)
      os << (k ? "," : "") << kernel.theta[k];
    os << "]";
    throw IllConditionedError(os.str(), sol.condition);
  }
  // Back to original response units; the rescaled pair solves the
  // unstandardized system exactly, so all identities keep gamma unchanged.
  model.alpha = model.y_std * sol.alpha;
  model.bias = model.y_std * sol.bias + model.y_mean;
  return model;
}

double predict_lssvr(const LssvrModel& model, const Vector& x) {
  const Vector u = model.unit_of(x);
  double acc = model.bias;
  for (Index i = 0; i < model.unit_points.rows(); ++i) {
    double sq = 0.0;
    for (Index k = 0; k < u.size(); ++k) {
      const double d = model.unit_points(i, k) - u[k];
      sq += model.kernel.theta[k] * d * d;
    }
    acc += model.alpha[i] * model.kernel.sigma * std::exp(-sq);
  }
  return acc;
}

Vector predict_lssvr_batch(const LssvrModel& model, const Matrix& points,
                           Exec exec) {
  Vector out(points.rows());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < points.rows(); ++i)
      out[i] = predict_lssvr(model, points.row(i).transpose());
  } else {
    for (Index i = 0; i < points.rows(); ++i)
      out[i] = predict_lssvr(model, points.row(i).transpose());
  }
  return out;
}

double lssvrLooRmseImpl(const Matrix& unit_points, const Vector& y_std,
                        double y_scale, const KernelParams& kernel,
                        double gamma) {
  const Matrix K = gauss_gram(unit_points, kernel, Exec::Serial);
  const Index n = y_std.size();
  Matrix H(n + 1, n + 1);
  H.topLeftCorner(n, n) = K + Matrix::Identity(n, n) / gamma;
  H.topRightCorner(n, 1).setOnes();
  H.bottomLeftCorner(1, n).setOnes();
  H(n, n) = 0.0;

  Eigen::PartialPivLU<Matrix> lu(H);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || 1.0 / rc > kConditionLimit) return kPenaltyScore;

  Vector rhs(n + 1);
  rhs.head(n) = y_std;
  rhs[n] = 0.0;
  const Vector sol = lu.solve(rhs);
  const Matrix inv = lu.inverse();

  double ss = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = inv(i, i);
    if (!std::isfinite(d) || d == 0.0) return kPenaltyScore;
    const double r = sol[i] / d;
    ss += r * r;
  }
  const double rmse = y_scale * std::sqrt(ss / static_cast<double>(n));
  return std::isfinite(rmse) ? rmse : kPenaltyScore;
}

double lssvr_loo_rmse(const SampleSet& data, const KernelParams& kernel,
                      double gamma) {
  if (data.size() < 2 || !(gamma > 0.0)) return kPenaltyScore;
  try {
    kernel.validate(data.dimension());
  } catch (const Error&) {
    return kPenaltyScore;
  }
  double mean, sd;
  standardize(data.responses, mean, sd);
  const Vector y_std = (data.responses.array() - mean) / sd;
  return lssvrLooRmseImpl(to_unit(data.points, data.domain), y_std, sd, kernel,
                          gamma);
}

SearchBox default_lssvr_search(Index dim) {
  SearchBox box;
  for (Index k = 0; k < dim; ++k) box.bounds.push_back({1e-3, 1e3});
  box.bounds.push_back({1e-2, 1e6});  // gamma
  box.log_mask.assign(box.bounds.size(), true);
  return box;
}

LssvrFitResult fit_lssvr(const SampleSet& data, const SearchBox& box,
                         GwoConfig cfg) {
  const Index s = data.dimension();
  if (static_cast<Index>(box.bounds.size()) != s + 1)
    throw ConfigError("fit_lssvr: search box must cover theta and gamma");
  cfg.bounds = box.bounds;
  cfg.log_scale_mask = box.log_mask;

  // Standardize once; candidate evaluations share the scaled data.
  double mean, sd;
  standardize(data.responses, mean, sd);
  const Vector y_std = (data.responses.array() - mean) / sd;
  const Matrix unit_points = to_unit(data.points, data.domain);

  auto objective = [&](const Vector& pos) {
    KernelParams kp;
    kp.sigma = 1.0;
    kp.theta = pos.head(s);
    return lssvrLooRmseImpl(unit_points, y_std, sd, kp, pos[s]);
  };

  LssvrFitResult result;
  result.search = gwo_minimize(objective, cfg);
  result.all_penalty = !(result.search.best_score < kPenaltyScore);

  KernelParams kp;
  kp.sigma = 1.0;
  kp.theta = result.search.best_position.head(s);
  try {
    result.model = train_lssvr(data, kp, result.search.best_position[s]);
  } catch (const IllConditionedError&) {
    result.model.reset();
  }
  return result;
}

}  // namespace mfs
