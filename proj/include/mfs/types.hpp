#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "mfs/errors.hpp"

namespace mfs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Execution policy for the data-parallel kernels. `Serial` is the reference
// path kept for testing; `Parallel` uses OpenMP. Both produce bit-identical
// results because every work item writes only its own output slot.
enum class Exec { Serial, Parallel };

// Axis-aligned box in problem units, one (low, high) interval per dimension.
struct DomainBox {
  Vector lo;
  Vector hi;

  DomainBox() = default;
  DomainBox(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    validate();
  }
  static DomainBox cube(Index dim, double lo, double hi) {
    return DomainBox(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
  }

  Index dimension() const { return lo.size(); }

  void validate() const {
    if (lo.size() != hi.size())
      throw DimensionError("domain box: lo/hi length mismatch");
    for (Index k = 0; k < lo.size(); ++k)
      if (!(lo[k] < hi[k]))
        throw ConfigError("domain box: axis " + std::to_string(k) +
                          " has low >= high");
  }

  bool contains(const Vector& x, double tol = 1e-12) const {
    if (x.size() != lo.size()) return false;
    for (Index k = 0; k < x.size(); ++k)
      if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
    return true;
  }

  bool operator==(const DomainBox& o) const {
    return lo.size() == o.lo.size() && lo == o.lo && hi == o.hi;
  }
};

// Input points with aligned responses at a single fidelity.
// Rows of `points` are samples, columns are input dimensions.
struct SampleSet {
  Matrix points;
  Vector responses;
  DomainBox domain;

  SampleSet() = default;
  SampleSet(Matrix pts, Vector resp, DomainBox box)
      : points(std::move(pts)), responses(std::move(resp)), domain(std::move(box)) {
    validate();
  }

  Index size() const { return points.rows(); }
  Index dimension() const { return points.cols(); }

  void validate() const {
    domain.validate();
    if (points.rows() != responses.size())
      throw DimensionError("sample set: point count != response count");
    if (points.cols() != domain.dimension())
      throw DimensionError("sample set: point dimension != domain dimension");
    for (Index i = 0; i < points.rows(); ++i)
      if (!domain.contains(points.row(i).transpose()))
        throw RangeError("sample set: point " + std::to_string(i) +
                         " lies outside the domain box");
  }
};

}  // namespace mfs
