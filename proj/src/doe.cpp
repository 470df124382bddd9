#include "mfs/doe.hpp"

#include "mfs/rng.hpp"

namespace mfs {

Matrix lhs(Index n, Index s, std::uint64_t seed) {
  if (n < 1 || s < 1) throw ConfigError("lhs: n and s must be >= 1");
  Rng rng(seed);
  Matrix out(n, s);
  // Per column: a stratum permutation, then one jitter draw per point.
  for (Index j = 0; j < s; ++j) {
    const auto perm = random_permutation(static_cast<std::size_t>(n), rng);
    for (Index i = 0; i < n; ++i) {
      const double jitter = unit_draw(rng);
      out(i, j) = (static_cast<double>(perm[static_cast<std::size_t>(i)]) + jitter) /
                  static_cast<double>(n);
    }
  }
  return out;
}

Matrix uniform_sample(Index n, Index s, std::uint64_t seed) {
  if (n < 1 || s < 1) throw ConfigError("uniform_sample: n and s must be >= 1");
  Rng rng(seed);
  Matrix out(n, s);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < s; ++j) out(i, j) = unit_draw(rng);
  return out;
}

Matrix scale(const Matrix& unit_points, const DomainBox& box) {
  box.validate();
  if (unit_points.cols() != box.dimension())
    throw DimensionError("scale: point dimension != box dimension");
  Matrix out(unit_points.rows(), unit_points.cols());
  for (Index i = 0; i < unit_points.rows(); ++i)
    for (Index k = 0; k < unit_points.cols(); ++k) {
      const double u = unit_points(i, k);
      if (u < 0.0 || u > 1.0)
        throw RangeError("scale: coordinate outside the unit cube at row " +
                         std::to_string(i));
      out(i, k) = box.lo[k] + u * (box.hi[k] - box.lo[k]);
    }
  return out;
}

Vector scale(const Vector& unit_point, const DomainBox& box) {
  Matrix m = unit_point.transpose();
  return scale(m, box).row(0).transpose();
}

Matrix to_unit(const Matrix& points, const DomainBox& box) {
  box.validate();
  if (points.cols() != box.dimension())
    throw DimensionError("to_unit: point dimension != box dimension");
  Matrix out(points.rows(), points.cols());
  for (Index i = 0; i < points.rows(); ++i)
    for (Index k = 0; k < points.cols(); ++k)
      out(i, k) = (points(i, k) - box.lo[k]) / (box.hi[k] - box.lo[k]);
  return out;
}

Vector to_unit(const Vector& point, const DomainBox& box) {
  Matrix m = point.transpose();
  return to_unit(m, box).row(0).transpose();
}

std::pair<Matrix, Matrix> make_mf_doe(const DomainBox& box, Index hf_n,
                                      Index lf_n, std::uint64_t seed) {
  if (hf_n < 1 || lf_n < 1)
    throw ConfigError("make_mf_doe: sample budgets must be >= 1");
  const Index s = box.dimension();
  Matrix hf = scale(lhs(hf_n, s, mix_seed(seed, 1)), box);
  Matrix lf = scale(lhs(lf_n, s, mix_seed(seed, 2)), box);
  return {std::move(hf), std::move(lf)};
}

}  // namespace mfs
