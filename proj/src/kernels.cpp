#include "mfs/kernels.hpp"

#include <cmath>
#include <sstream>

namespace mfs {

namespace {

// sum_k theta_k * (a_k - b_k)^2 over two matrix rows
inline double weighted_sqdist(const Matrix& a, Index i, const Matrix& b,
                              Index j, const Vector& theta) {
  double acc = 0.0;
  for (Index k = 0; k < theta.size(); ++k) {
    const double d = a(i, k) - b(j, k);
    acc += theta[k] * d * d;
  }
  return acc;
}

inline double lf_lf_entry(const Matrix& a, Index i, const Matrix& b, Index j,
                          const CoSvrHyperparams& hp) {
  return hp.sigma_l * std::exp(-weighted_sqdist(a, i, b, j, hp.theta_l));
}

inline double cross_entry(const Matrix& a, Index i, const Matrix& b, Index j,
                          const CoSvrHyperparams& hp) {
  return hp.rho * hp.rho * hp.sigma_l *
         std::exp(-weighted_sqdist(a, i, b, j, hp.theta_l));
}

inline double hf_hf_entry(const Matrix& a, Index i, const Matrix& b, Index j,
                          const CoSvrHyperparams& hp) {
  return hp.rho * hp.rho * hp.sigma_l *
             std::exp(-weighted_sqdist(a, i, b, j, hp.theta_l)) +
         hp.sigma_d * std::exp(-weighted_sqdist(a, i, b, j, hp.theta_d));
}

void fill_mfs(Matrix& K, const Matrix& x_lf, const Matrix& x_hf,
              const CoSvrHyperparams& hp, Index row) {
  const Index p = x_lf.rows();
  const Index q = x_hf.rows();
  const Index n = p + q;
  // Fill the upper triangle of one row, mirror below. Entry formulas depend
  // only on which blocks (row, col) fall in, so every entry is independent.
  if (row < p) {
    for (Index j = row; j < p; ++j)
      K(row, j) = K(j, row) = lf_lf_entry(x_lf, row, x_lf, j, hp);
    for (Index j = p; j < n; ++j)
      K(row, j) = K(j, row) = cross_entry(x_lf, row, x_hf, j - p, hp);
  } else {
    for (Index j = row; j < n; ++j)
      K(row, j) = K(j, row) = hf_hf_entry(x_hf, row - p, x_hf, j - p, hp);
  }
}

}  // namespace

std::string CoSvrHyperparams::describe() const {
  std::ostringstream os;
  os << "rho=" << rho << " sigma_l=" << sigma_l << " sigma_d=" << sigma_d
     << " gamma=" << gamma << " theta_l=[";
  for (Index k = 0; k < theta_l.size(); ++k)
    os << (k ? "," : "") << theta_l[k];
  os << "] theta_d=[";
  for (Index k = 0; k < theta_d.size(); ++k)
    os << (k ? "," : "") << theta_d[k];
  os << "]";
  return os.str();
}

double gauss_kernel(const Vector& x_i, const Vector& x_j,
                    const KernelParams& params) {
  if (x_i.size() != x_j.size())
    throw DimensionError("gauss_kernel: point dimensions differ");
  params.validate(x_i.size());
  double acc = 0.0;
  for (Index k = 0; k < x_i.size(); ++k) {
    const double d = x_i[k] - x_j[k];
    acc += params.theta[k] * d * d;
  }
  return params.sigma * std::exp(-acc);
}

Matrix gauss_gram(const Matrix& points, const KernelParams& params,
                  Exec exec) {
  params.validate(points.cols());
  const Index n = points.rows();
  Matrix K(n, n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        K(i, j) = K(j, i) =
            params.sigma *
            std::exp(-weighted_sqdist(points, i, points, j, params.theta));
  } else {
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        K(i, j) = K(j, i) =
            params.sigma *
            std::exp(-weighted_sqdist(points, i, points, j, params.theta));
  }
  return K;
}

MfsKernelMatrix assemble_mfs_kernel(const Matrix& x_lf, const Matrix& x_hf,
                                    const CoSvrHyperparams& hp, Exec exec) {
  if (x_lf.cols() != x_hf.cols())
    throw DimensionError("assemble_mfs_kernel: LF/HF point dimensions differ");
  hp.validate(x_lf.cols());
  if (x_lf.rows() < 1 || x_hf.rows() < 1)
    throw DimensionError("assemble_mfs_kernel: need at least one point per fidelity");

  const Index n = x_lf.rows() + x_hf.rows();
  MfsKernelMatrix out;
  out.p = x_lf.rows();
  out.q = x_hf.rows();
  out.values.resize(n, n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index row = 0; row < n; ++row)
      fill_mfs(out.values, x_lf, x_hf, hp, row);
  } else {
    for (Index row = 0; row < n; ++row)
      fill_mfs(out.values, x_lf, x_hf, hp, row);
  }
  return out;
}

Vector mfs_cross_vector(const Vector& x_star, const Matrix& x_lf,
                        const Matrix& x_hf, const CoSvrHyperparams& hp) {
  if (x_star.size() != x_lf.cols() || x_star.size() != x_hf.cols())
    throw DimensionError("mfs_cross_vector: query dimension mismatch");
  hp.validate(x_star.size());

  const Index p = x_lf.rows();
  const Index q = x_hf.rows();
  Vector k(p + q);
  Matrix star = x_star.transpose();
  for (Index j = 0; j < p; ++j) k[j] = cross_entry(star, 0, x_lf, j, hp);
  for (Index j = 0; j < q; ++j) k[p + j] = hf_hf_entry(star, 0, x_hf, j, hp);
  return k;
}

}  // namespace mfs
