#include <doctest.h>

#include <cmath>

#include "mfs/kernels.hpp"
#include "mfs/rng.hpp"

using namespace mfs;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

CoSvrHyperparams hp_with(Index dim, double rho, double sl, double sd,
                         double tl, double td) {
  CoSvrHyperparams hp;
  hp.rho = rho;
  hp.sigma_l = sl;
  hp.sigma_d = sd;
  hp.theta_l = Vector::Constant(dim, tl);
  hp.theta_d = Vector::Constant(dim, td);
  return hp;
}

// Oracle: direct transcription of the four block formulas, evaluated
// entry-by-entry without any shared code path with the library.
double oracle_gauss(const Vector& a, const Vector& b, double sigma,
                    const Vector& theta) {
  double e = 0.0;
  for (Index k = 0; k < a.size(); ++k)
    e += theta[k] * (a[k] - b[k]) * (a[k] - b[k]);
  return sigma * std::exp(-e);
}

Matrix oracle_mfs(const Matrix& xl, const Matrix& xh,
                  const CoSvrHyperparams& hp) {
  const Index p = xl.rows(), q = xh.rows();
  Matrix K(p + q, p + q);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j)
      K(i, j) = oracle_gauss(xl.row(i).transpose(), xl.row(j).transpose(),
                             hp.sigma_l, hp.theta_l);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < q; ++j) {
      const double v = hp.rho * hp.rho *
                       oracle_gauss(xl.row(i).transpose(), xh.row(j).transpose(),
                                    hp.sigma_l, hp.theta_l);
      K(i, p + j) = v;
      K(p + j, i) = v;
    }
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j)
      K(p + i, p + j) =
          hp.rho * hp.rho *
              oracle_gauss(xh.row(i).transpose(), xh.row(j).transpose(),
                           hp.sigma_l, hp.theta_l) +
          oracle_gauss(xh.row(i).transpose(), xh.row(j).transpose(),
                       hp.sigma_d, hp.theta_d);
  return K;
}

Matrix random_points(Index n, Index dim, Rng& rng) {
  Matrix m(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < dim; ++k) m(i, k) = unit_draw(rng);
  return m;
}

}  // namespace

TEST_CASE("gauss kernel at zero distance returns sigma") {
  KernelParams kp;
  kp.sigma = 2.5;
  kp.theta = vec2(3.0, 0.4);
  const Vector x = vec2(0.3, 0.7);
  CHECK(gauss_kernel(x, x, kp) == 2.5);  // exponent is exactly zero
}

TEST_CASE("gauss kernel with zero theta erases the distance") {
  KernelParams kp;
  kp.sigma = 1.0;
  kp.theta = vec2(0.0, 0.0);
  CHECK(gauss_kernel(vec2(0.1, 0.9), vec2(0.8, 0.2), kp) == 1.0);
}

TEST_CASE("gauss kernel closed-form value") {
  KernelParams kp;
  kp.sigma = 1.0;
  kp.theta = vec2(1.0, 1.0);
  const double v = gauss_kernel(vec2(0, 0), vec2(1, 1), kp);
  CHECK(v == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(v == doctest::Approx(0.135335).epsilon(1e-5));
}

TEST_CASE("gauss kernel rejects mismatched dimensions") {
  KernelParams kp;
  kp.sigma = 1.0;
  kp.theta = vec2(1.0, 1.0);
  Vector x3(3);
  x3 << 0, 0, 0;
  CHECK_THROWS_AS(gauss_kernel(x3, vec2(0, 0), kp), DimensionError);
  kp.theta = Vector::Constant(3, 1.0);
  CHECK_THROWS_AS(gauss_kernel(vec2(0, 0), vec2(0, 0), kp), DimensionError);
}

TEST_CASE("gauss kernel symmetry and boundedness over random pairs") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Index dim = 1 + static_cast<Index>(unit_draw(rng) * 4);
    KernelParams kp;
    kp.sigma = unit_draw(rng) * 5.0;
    kp.theta = Vector::NullaryExpr(dim, [&](Index) { return unit_draw(rng) * 10.0; });
    const Vector x = Vector::NullaryExpr(dim, [&](Index) { return unit_draw(rng); });
    const Vector y = Vector::NullaryExpr(dim, [&](Index) { return unit_draw(rng); });
    const double kxy = gauss_kernel(x, y, kp);
    CHECK(kxy == gauss_kernel(y, x, kp));  // exact
    CHECK(kxy >= 0.0);
    CHECK(kxy <= kp.sigma);
  }
}

TEST_CASE("mfs kernel collapses to [[1,1],[1,2]] for identical points") {
  Matrix pt(1, 2);
  pt << 0.4, 0.6;
  const auto K = assemble_mfs_kernel(pt, pt, hp_with(2, 1.0, 1.0, 1.0, 3.0, 9.0));
  CHECK(K.p == 1);
  CHECK(K.q == 1);
  CHECK(K.values(0, 0) == doctest::Approx(1.0));
  CHECK(K.values(0, 1) == doctest::Approx(1.0));
  CHECK(K.values(1, 0) == doctest::Approx(1.0));
  CHECK(K.values(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("rho = 0 zeroes the cross blocks and the HF trend term") {
  Rng rng(3);
  const Matrix xl = random_points(3, 2, rng);
  const Matrix xh = random_points(2, 2, rng);
  const auto hp = hp_with(2, 0.0, 2.0, 0.7, 1.0, 4.0);
  const auto K = assemble_mfs_kernel(xl, xh, hp);
  CHECK(K.values.topRightCorner(3, 2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(K.values.bottomLeftCorner(2, 3).cwiseAbs().maxCoeff() == 0.0);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      const double expect = oracle_gauss(xh.row(i).transpose(),
                                         xh.row(j).transpose(), 0.7,
                                         hp.theta_d);
      CHECK(K.values(3 + i, 3 + j) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("mfs kernel matches the entry-wise oracle on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index dim = 1 + static_cast<Index>(unit_draw(rng) * 3);
    const Index p = 1 + static_cast<Index>(unit_draw(rng) * 6);
    const Index q = 1 + static_cast<Index>(unit_draw(rng) * 5);
    const Matrix xl = random_points(p, dim, rng);
    const Matrix xh = random_points(q, dim, rng);
    CoSvrHyperparams hp;
    hp.rho = unit_draw(rng);
    hp.sigma_l = 0.1 + unit_draw(rng) * 3.0;
    hp.sigma_d = 0.1 + unit_draw(rng) * 3.0;
    hp.theta_l = Vector::NullaryExpr(dim, [&](Index) { return unit_draw(rng) * 8.0; });
    hp.theta_d = Vector::NullaryExpr(dim, [&](Index) { return unit_draw(rng) * 8.0; });

    const auto K = assemble_mfs_kernel(xl, xh, hp);
    const Matrix expect = oracle_mfs(xl, xh, hp);
    CHECK((K.values - expect).cwiseAbs().maxCoeff() < 1e-14);
    // exact symmetry, not approximate
    CHECK(K.values == K.values.transpose().eval());
    // serial and parallel paths agree bit-for-bit
    const auto Ks = assemble_mfs_kernel(xl, xh, hp, Exec::Serial);
    CHECK(K.values == Ks.values);
  }
}

TEST_CASE("cross vector trivial identities") {
  Rng rng(5);
  const Matrix xl = random_points(4, 2, rng);
  const Matrix xh = random_points(3, 2, rng);
  auto hp = hp_with(2, 0.6, 1.5, 0.8, 2.0, 5.0);

  SUBCASE("query on an HF training point hits rho^2 sigma_l + sigma_d") {
    const Vector k = mfs_cross_vector(xh.row(1).transpose(), xl, xh, hp);
    CHECK(k[4 + 1] == doctest::Approx(0.6 * 0.6 * 1.5 + 0.8).epsilon(1e-14));
  }
  SUBCASE("rho = 0 zeroes the LF entries") {
    hp.rho = 0.0;
    const Vector k = mfs_cross_vector(xh.row(0).transpose(), xl, xh, hp);
    CHECK(k.head(4).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("cross vector equals the appended-point kernel row") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Index dim = 2;
    const Matrix xl = random_points(5, dim, rng);
    const Matrix xh = random_points(3, dim, rng);
    const Vector star = random_points(1, dim, rng).row(0).transpose();
    const auto hp = hp_with(dim, 0.4, 1.2, 0.9, 3.0, 6.0);

    Matrix xh_ext(4, dim);
    xh_ext.topRows(3) = xh;
    xh_ext.row(3) = star.transpose();
    const auto K = assemble_mfs_kernel(xl, xh_ext, hp);
    const Vector k = mfs_cross_vector(star, xl, xh, hp);
    for (Index j = 0; j < 8; ++j)
      CHECK(k[j] == doctest::Approx(K.values(8, j)).epsilon(1e-15));
  }
}

TEST_CASE("pure Gaussian blocks are positive semidefinite") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Index n = 10 + static_cast<Index>(unit_draw(rng) * 41);  // up to 50
    const Index dim = 1 + static_cast<Index>(unit_draw(rng) * 3);
    const Matrix pts = random_points(n, dim, rng);
    KernelParams kp;
    kp.sigma = 0.5 + unit_draw(rng) * 2.0;
    kp.theta =
        Vector::NullaryExpr(dim, [&](Index) { return 0.1 + unit_draw(rng) * 20.0; });
    const Matrix K = gauss_gram(pts, kp);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(K);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * kp.sigma);
  }
}

TEST_CASE("dimension mismatches raise dimension errors") {
  Rng rng(23);
  const Matrix xl = random_points(2, 2, rng);
  const Matrix xh = random_points(2, 3, rng);
  CHECK_THROWS_AS(assemble_mfs_kernel(xl, xh, hp_with(2, 0.5, 1, 1, 1, 1)),
                  DimensionError);
  const Matrix xh2 = random_points(2, 2, rng);
  Vector star3(3);
  star3.setZero();
  CHECK_THROWS_AS(mfs_cross_vector(star3, xl, xh2, hp_with(2, 0.5, 1, 1, 1, 1)),
                  DimensionError);
}
