#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mfs/cosvr.hpp"
#include "mfs/csv.hpp"
#include "mfs/doe.hpp"
#include "mfs/lssvr.hpp"
#include "mfs/model_io.hpp"
#include "mfs/rng.hpp"

using namespace mfs;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mfs_test_" + std::to_string(Rng(std::random_device{}())()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

MultiFidelityData toy_mf(Rng& rng) {
  DomainBox box = DomainBox::cube(2, -1.0, 2.0);
  Matrix xl(6, 2), xh(3, 2);
  Vector yl(6), yh(3);
  for (Index i = 0; i < 6; ++i) {
    xl(i, 0) = -1.0 + 3.0 * unit_draw(rng);
    xl(i, 1) = -1.0 + 3.0 * unit_draw(rng);
    yl[i] = std::sin(xl(i, 0)) + xl(i, 1);
  }
  for (Index i = 0; i < 3; ++i) {
    xh(i, 0) = -1.0 + 3.0 * unit_draw(rng);
    xh(i, 1) = -1.0 + 3.0 * unit_draw(rng);
    yh[i] = std::sin(xh(i, 0)) + 1.1 * xh(i, 1);
  }
  return MultiFidelityData(SampleSet(xl, yl, box), SampleSet(xh, yh, box));
}

}  // namespace

TEST_CASE("sample CSV round-trips exactly") {
  TempDir dir;
  Rng rng(1);
  Matrix pts(7, 3);
  Vector y(7);
  for (Index i = 0; i < 7; ++i) {
    for (Index k = 0; k < 3; ++k)
      pts(i, k) = (unit_draw(rng) - 0.5) * std::pow(10.0, 6.0 * unit_draw(rng) - 3.0);
    y[i] = unit_draw(rng) * 1e4 - 5e3;
  }
  const auto path = dir.file("samples.csv");
  write_samples(path, pts, &y);
  const SampleTable back = read_samples(path);
  CHECK(back.points == pts);  // 17-digit output reparses to identical bits
  CHECK(back.responses == y);
}

TEST_CASE("valve-style table infers its dimension from the header") {
  TempDir dir;
  std::string text = "x1,x2,y\n";
  Rng rng(2);
  for (int i = 0; i < 20; ++i)
    text += format_double(0.1 + 0.3 * unit_draw(rng)) + "," +
            format_double(1.0 + 3.0 * unit_draw(rng)) + "," +
            format_double(100.0 * unit_draw(rng)) + "\n";
  const auto path = dir.file("valve.csv");
  write_text(path, text);
  const SampleTable table = read_samples(path);
  CHECK(table.points.rows() == 20);
  CHECK(table.points.cols() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  TempDir dir;
  SUBCASE("no data rows reported at line 2") {
    const auto path = dir.file("empty.csv");
    write_text(path, "x1,y\n");
    try {
      read_samples(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
  }
  SUBCASE("blank row is an error at its line") {
    const auto path = dir.file("blank.csv");
    write_text(path, "x1,y\n1,2\n\n3,4\n");
    try {
      read_samples(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
  SUBCASE("non-finite value is rejected") {
    const auto path = dir.file("inf.csv");
    write_text(path, "x1,y\n1,inf\n");
    CHECK_THROWS_AS(read_samples(path), DataError);
  }
  SUBCASE("ragged row is rejected") {
    const auto path = dir.file("ragged.csv");
    write_text(path, "x1,x2,y\n1,2,3\n4,5\n");
    try {
      read_samples(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
  SUBCASE("header mismatch is rejected") {
    const auto path = dir.file("badheader.csv");
    write_text(path, "a,b,y\n1,2,3\n");
    CHECK_THROWS_AS(read_samples(path), DataError);
  }
  SUBCASE("junk after a number is rejected") {
    const auto path = dir.file("junk.csv");
    write_text(path, "x1,y\n1.5x,2\n");
    CHECK_THROWS_AS(read_samples(path), DataError);
  }
}

TEST_CASE("read_points accepts both bare designs and sample files") {
  TempDir dir;
  const auto bare = dir.file("bare.csv");
  write_text(bare, "x1,x2\n0.25,0.5\n");
  CHECK(read_points(bare).cols() == 2);
  const auto with_y = dir.file("with_y.csv");
  write_text(with_y, "x1,x2,y\n0.25,0.5,9\n");
  const Matrix pts = read_points(with_y);
  CHECK(pts.cols() == 2);
  CHECK(pts(0, 1) == 0.5);
}

TEST_CASE("cosvr model export/import leaves predictions bit-identical") {
  TempDir dir;
  Rng rng(3);
  auto data = toy_mf(rng);
  CoSvrHyperparams hp;
  hp.rho = 0.62;
  hp.sigma_l = 1.7;
  hp.sigma_d = 0.31;
  hp.theta_l = Vector::Constant(2, 2.4);
  hp.theta_d = Vector::Constant(2, 7.9);
  hp.gamma = 721.0;
  const auto model = train_cosvr(data, hp);

  const auto path = dir.file("model.txt");
  save_model(model, path);
  CHECK(peek_model_kind(path) == ModelKind::CoSvr);
  const auto loaded = load_cosvr_model(path);

  CHECK(loaded.alpha == model.alpha);
  CHECK(loaded.bias == model.bias);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(2);
    x << -1.0 + 3.0 * unit_draw(rng), -1.0 + 3.0 * unit_draw(rng);
    const double a = predict_cosvr(model, x);
    const double b = predict_cosvr(loaded, x);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("lssvr model export/import round-trips") {
  TempDir dir;
  Rng rng(4);
  DomainBox box = DomainBox::cube(1, 0.0, 10.0);
  Matrix pts(5, 1);
  Vector y(5);
  for (Index i = 0; i < 5; ++i) {
    pts(i, 0) = 10.0 * unit_draw(rng);
    y[i] = std::cos(pts(i, 0));
  }
  KernelParams kp;
  kp.sigma = 1.0;
  kp.theta = Vector::Constant(1, 4.2);
  const auto model = train_lssvr(SampleSet(pts, y, box), kp, 310.0);

  const auto path = dir.file("lssvr.txt");
  save_model(model, path);
  CHECK(peek_model_kind(path) == ModelKind::Lssvr);
  const auto loaded = load_lssvr_model(path);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = Vector::Constant(1, 10.0 * unit_draw(rng));
    CHECK(predict_lssvr(loaded, x) == predict_lssvr(model, x));
  }
}

TEST_CASE("model files reject tampering") {
  TempDir dir;
  const auto path = dir.file("bad.txt");
  write_text(path, "mfs-model something 1\n");
  CHECK_THROWS_AS(peek_model_kind(path), DataError);
  write_text(path, "mfs-model cosvr 1\ndimension 2\n");  // truncated
  CHECK_THROWS_AS(load_cosvr_model(path), DataError);
}
