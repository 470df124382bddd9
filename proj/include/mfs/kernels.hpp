#pragma once

#include "mfs/types.hpp"

namespace mfs {

// Anisotropic Gaussian kernel parameters: process scale sigma and one
// inverse length-scale per input dimension.
struct KernelParams {
  double sigma = 1.0;
  Vector theta;

  void validate(Index dim) const {
    if (theta.size() != dim)
      throw DimensionError("kernel params: theta length != input dimension");
    if (sigma < 0.0) throw ConfigError("kernel params: sigma must be >= 0");
    for (Index k = 0; k < theta.size(); ++k)
      if (theta[k] < 0.0) throw ConfigError("kernel params: theta must be >= 0");
  }
};

// Tunable Co_SVR kernel parameters. theta_l/theta_d have one entry per input
// dimension; gamma is the regression-error weight of the training solve.
struct CoSvrHyperparams {
  double rho = 0.5;
  double sigma_l = 1.0;
  double sigma_d = 1.0;
  Vector theta_l;
  Vector theta_d;
  double gamma = 1e4;

  void validate(Index dim) const {
    if (theta_l.size() != dim || theta_d.size() != dim)
      throw DimensionError("hyperparams: theta length != input dimension");
    if (sigma_l < 0.0 || sigma_d < 0.0)
      throw ConfigError("hyperparams: sigma_l/sigma_d must be >= 0");
    if (!(gamma > 0.0)) throw ConfigError("hyperparams: gamma must be > 0");
  }

  std::string describe() const;
};

// Symmetric (p+q) x (p+q) multi-fidelity kernel matrix. Block layout:
//   [ LF-LF (p x p)   LF-HF (p x q) ]
//   [ HF-LF (q x p)   HF-HF (q x q) ]
struct MfsKernelMatrix {
  Matrix values;
  Index p = 0;  // LF point count
  Index q = 0;  // HF point count
};

// sigma * exp(-sum_k theta_k (x_i[k] - x_j[k])^2)
double gauss_kernel(const Vector& x_i, const Vector& x_j,
                    const KernelParams& params);

// Gram matrix of gauss_kernel over the rows of `points`.
Matrix gauss_gram(const Matrix& points, const KernelParams& params,
                  Exec exec = Exec::Parallel);

// Assembles the four-block multi-fidelity kernel matrix:
//   LF-LF:  sigma_l * exp(-sum theta_l d^2)
//   LF-HF and HF-LF: rho^2 * sigma_l * exp(-sum theta_l d^2)
//   HF-HF:  rho^2 * sigma_l * exp(-sum theta_l d^2)
//         +          sigma_d * exp(-sum theta_d d^2)
// Rows of x_lf / x_hf are points; all must share the hyperparams' dimension.
MfsKernelMatrix assemble_mfs_kernel(const Matrix& x_lf, const Matrix& x_hf,
                                    const CoSvrHyperparams& hp,
                                    Exec exec = Exec::Parallel);

// Prediction-time kernel vector for a high-fidelity query point: entries
// 0..p-1 use the HF-LF block formula against x_lf, entries p..p+q-1 the
// HF-HF formula against x_hf. Appending x_star to x_hf and assembling
// reproduces this vector as the new row restricted to the old points.
Vector mfs_cross_vector(const Vector& x_star, const Matrix& x_lf,
                        const Matrix& x_hf, const CoSvrHyperparams& hp);

}  // namespace mfs
