#pragma once

#include <cmath>
#include <limits>

#include "mfs/types.hpp"

namespace mfs {

// Condition-estimate ceiling beyond which a training system is rejected.
inline constexpr double kConditionLimit = 1e12;

// Score assigned to failed candidate evaluations during hyperparameter
// search: the largest finite double, so any successful training wins.
inline constexpr double kPenaltyScore = std::numeric_limits<double>::max();

struct BorderedSolution {
  Vector alpha;
  double bias = 0.0;
  double condition = 0.0;

  bool ok() const {
    return std::isfinite(condition) && condition <= kConditionLimit &&
           alpha.allFinite() && std::isfinite(bias);
  }
};

// Solves [[K + I/gamma, 1], [1^T, 0]] [alpha; b] = [y; 0] by partially
// pivoted LU, with a reciprocal-condition estimate of the bordered matrix.
inline BorderedSolution solve_bordered(const Matrix& K, const Vector& y,
                                       double gamma) {
  const Index n = y.size();
  Matrix H(n + 1, n + 1);
  H.topLeftCorner(n, n) = K + Matrix::Identity(n, n) / gamma;
  H.topRightCorner(n, 1).setOnes();
  H.bottomLeftCorner(1, n).setOnes();
  H(n, n) = 0.0;

  Vector rhs(n + 1);
  rhs.head(n) = y;
  rhs[n] = 0.0;

  Eigen::PartialPivLU<Matrix> lu(H);
  BorderedSolution out;
  const double rc = lu.rcond();
  out.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  const Vector sol = lu.solve(rhs);
  out.alpha = sol.head(n);
  out.bias = sol[n];
  return out;
}

// Sample mean and standard deviation (n-1 divisor) used for response
// standardization; a (near-)constant response keeps scale 1 so the
// transform stays invertible.
inline void standardize(const Vector& y, double& mean, double& sd) {
  mean = y.mean();
  double ss = 0.0;
  for (Index i = 0; i < y.size(); ++i) {
    const double d = y[i] - mean;
    ss += d * d;
  }
  sd = y.size() > 1 ? std::sqrt(ss / static_cast<double>(y.size() - 1)) : 0.0;
  if (!(sd > 1e-300)) sd = 1.0;
}

}  // namespace mfs
