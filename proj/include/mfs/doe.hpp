#pragma once

#include <cstdint>
#include <utility>

#include "mfs/types.hpp"

namespace mfs {

// Latin hypercube sample: n x s matrix in [0,1]^s. Each column places exactly
// one point in each stratum [(k-1)/n, k/n) with uniform jitter inside it.
// Deterministic per seed.
Matrix lhs(Index n, Index s, std::uint64_t seed);

// Plain uniform random sample in [0,1]^s, deterministic per seed.
Matrix uniform_sample(Index n, Index s, std::uint64_t seed);

// Affine per-axis map of unit-cube points into the box. Points must lie in
// [0,1]^s.
Matrix scale(const Matrix& unit_points, const DomainBox& box);
Vector scale(const Vector& unit_point, const DomainBox& box);

// Inverse of scale: box points back to the unit cube.
Matrix to_unit(const Matrix& points, const DomainBox& box);
Vector to_unit(const Vector& point, const DomainBox& box);

// Two independent LHS designs (distinct sub-seeds derived from seed), scaled
// to the box: first the HF design, then the LF design.
std::pair<Matrix, Matrix> make_mf_doe(const DomainBox& box, Index hf_n,
                                      Index lf_n, std::uint64_t seed);

}  // namespace mfs
