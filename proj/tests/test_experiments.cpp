#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfs/experiments.hpp"
#include "mfs/rng.hpp"

using namespace mfs;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mfs_exp_" + std::to_string(Rng(std::random_device{}())()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a fast spec for plumbing tests: tiny GWO budget, few test points
ExperimentSpec tiny_spec() {
  ExperimentSpec spec;
  spec.family = "park2";
  spec.m_grid = {0.0, 0.5};
  spec.hf_budget = "2s";
  spec.lf_budget = "10s";
  spec.repeats = 2;
  spec.test_points = 60;
  spec.seed = 7;
  spec.models = {"cosvr", "lssvr_hf"};
  spec.gwo_population = 6;
  spec.gwo_iterations = 8;
  return spec;
}

SampleTable park2_table(Index n, std::uint64_t seed, double fidelity_scale) {
  const auto& fam = find_family("park2");
  long resamples = 0;
  SampleTable t;
  t.points = valid_uniform(fam, fam.domain, n, seed, resamples);
  t.responses.resize(n);
  for (Index i = 0; i < n; ++i)
    t.responses[i] = fidelity_scale == 1.0
                         ? fam.hf(t.points.row(i).transpose())
                         : fam.lf(t.points.row(i).transpose(), 0.2);
  return t;
}

}  // namespace

TEST_CASE("budget rules expand against the dimension") {
  CHECK(expand_budget("2s", 2) == 4);
  CHECK(expand_budget("10s", 2) == 20);
  CHECK(expand_budget("2s", 4) == 8);
  CHECK(expand_budget("10s", 4) == 40);
  CHECK(expand_budget("17", 4) == 17);
  CHECK_THROWS_AS(expand_budget("xs", 2), ConfigError);
  CHECK_THROWS_AS(expand_budget("0s", 2), ConfigError);
  CHECK_THROWS_AS(expand_budget("2q", 2), ConfigError);
}

TEST_CASE("config parsing mirrors the spec fields and rejects unknown keys") {
  TempDir dir;
  const auto path = dir.file("sweep.cfg");
  write_text(path,
             "# comment line\n"
             "family = currin\n"
             "m_grid = 0, 0.25, 1\n"
             "hf_budget = 2s\n"
             "lf_budget = 24\n"
             "repeats = 3\n"
             "test_points = 100\n"
             "seed = 99\n"
             "models = cosvr, lssvr_hf\n"
             "gwo.population = 12\n"
             "gwo.iterations = 40\n"
             "gamma = 500\n"
             "domain_override = 0:1, 0.06:1\n");
  const ExperimentSpec spec = parse_config(path);
  CHECK(spec.family == "currin");
  CHECK(spec.m_grid == std::vector<double>{0.0, 0.25, 1.0});
  CHECK(spec.lf_budget == "24");
  CHECK(spec.repeats == 3);
  CHECK(spec.seed == 99);
  CHECK(spec.models.size() == 2);
  CHECK(spec.gwo_population == 12);
  CHECK(spec.gamma == 500.0);
  REQUIRE(spec.domain_override.has_value());
  CHECK(spec.domain_override->lo[1] == 0.06);

  const auto bad = dir.file("bad.cfg");
  write_text(bad, "family = currin\nwolves = 30\n");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  const auto unsorted = dir.file("unsorted.cfg");
  write_text(unsorted, "family = currin\nm_grid = 0.5, 0.25\n");
  CHECK_THROWS_AS(parse_config(unsorted), ConfigError);

  const auto badmodel = dir.file("badmodel.cfg");
  write_text(badmodel, "family = currin\nmodels = kriging\n");
  CHECK_THROWS_AS(parse_config(badmodel), ConfigError);
}

TEST_CASE("run_sweep emits one row per (m, model) with shared correlation") {
  auto spec = tiny_spec();
  const ExperimentResult result = run_sweep(spec);
  REQUIRE(result.rows.size() == 4);  // 2 m-values x 2 models
  CHECK(result.rows[0].model == "cosvr");
  CHECK(result.rows[1].model == "lssvr_hf");
  CHECK(result.rows[0].m == 0.0);
  CHECK(result.rows[2].m == 0.5);
  // pearson column is identical across models at fixed m
  CHECK(result.rows[0].pearson_r2 == result.rows[1].pearson_r2);
  CHECK(result.rows[2].pearson_r2 == result.rows[3].pearson_r2);
  // and differs across m for this family
  CHECK(result.rows[0].pearson_r2 != result.rows[2].pearson_r2);
  for (const auto& row : result.rows) {
    CHECK(row.mean_r2 <= 1.0);
    CHECK(row.n_repeats == 2);
  }
  // park2 is total: nothing to resample
  CHECK(result.resamples == 0);
}

TEST_CASE("run_sweep is a pure function of the spec") {
  TempDir dir;
  auto spec = tiny_spec();
  const auto a = dir.file("a.csv");
  const auto b = dir.file("b.csv");
  write_result(run_sweep(spec), a);
  write_result(run_sweep(spec), b);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("family,m,model,mean_r2") != std::string::npos);

  // a different seed changes the bytes
  spec.seed = 8;
  const auto c = dir.file("c.csv");
  write_result(run_sweep(spec), c);
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("lssvr_hf rows ignore m by construction of the HF function") {
  // same seed, same m index, different m: the HF design and test draws are
  // identical, so the baseline differs only through the correlation column
  auto spec = tiny_spec();
  spec.models = {"lssvr_hf"};
  spec.m_grid = {0.0};
  const auto a = run_sweep(spec);
  spec.m_grid = {1.0};
  const auto b = run_sweep(spec);
  CHECK(a.rows[0].mean_r2 == b.rows[0].mean_r2);
}

TEST_CASE("sweep validation errors precede computation") {
  auto spec = tiny_spec();
  spec.family = "no_such_family";
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec = tiny_spec();
  spec.m_grid = {0.2, 0.1};
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec = tiny_spec();
  spec.models = {"cosvr", "mystery"};
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec = tiny_spec();
  spec.domain_override = DomainBox::cube(3, 0.0, 1.0);  // wrong dimension
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("valid_lhs repairs singular draws and counts them") {
  const auto& currin = find_family("currin");
  long resamples = 0;
  const Matrix pts = valid_lhs(currin, currin.domain, 40, 5, resamples);
  CHECK(pts.rows() == 40);
  for (Index i = 0; i < pts.rows(); ++i) {
    CHECK(currin.is_valid(pts.row(i).transpose()));
    CHECK(currin.domain.contains(pts.row(i).transpose()));
  }
  // [0,0.5]^2 with the x2 <= 0.05 cut rejects about a tenth of draws
  CHECK(resamples > 0);
}

TEST_CASE("cv: fold sizes, determinism and the paper partition") {
  const SampleTable lf = park2_table(40, 1, 0.2);
  const SampleTable hf = park2_table(20, 2, 1.0);
  CvSpec spec;
  spec.folds = 5;
  spec.seed = 11;
  spec.gwo_population = 6;
  spec.gwo_iterations = 8;

  const auto result = run_cv(lf, hf, std::nullopt, spec);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].n_repeats == 5);  // five folds of four samples
  CHECK(result.rows[0].family == "external");

  const auto again = run_cv(lf, hf, std::nullopt, spec);
  CHECK(result.rows[0].mean_r2 == again.rows[0].mean_r2);
  CHECK(result.rows[1].std_r2 == again.rows[1].std_r2);
}

TEST_CASE("cv: fold assignment keyed to sample identity survives shuffling") {
  const SampleTable lf = park2_table(30, 3, 0.2);
  SampleTable hf = park2_table(15, 4, 1.0);
  CvSpec spec;
  spec.folds = 3;
  spec.seed = 21;
  spec.gwo_population = 6;
  spec.gwo_iterations = 8;
  const auto base = run_cv(lf, hf, std::nullopt, spec);

  // permutation oracle: shuffle the HF rows, rerun, compare aggregates
  Rng rng(5);
  const auto perm = random_permutation(15, rng);
  SampleTable shuffled;
  shuffled.points.resize(15, hf.points.cols());
  shuffled.responses.resize(15);
  for (std::size_t i = 0; i < 15; ++i) {
    shuffled.points.row(static_cast<Index>(i)) =
        hf.points.row(static_cast<Index>(perm[i]));
    shuffled.responses[static_cast<Index>(i)] =
        hf.responses[static_cast<Index>(perm[i])];
  }
  const auto moved = run_cv(lf, shuffled, std::nullopt, spec);
  CHECK(moved.rows[0].mean_r2 ==
        doctest::Approx(base.rows[0].mean_r2).epsilon(1e-10));
  CHECK(moved.rows[1].mean_r2 ==
        doctest::Approx(base.rows[1].mean_r2).epsilon(1e-10));
}

TEST_CASE("cv: configuration errors") {
  const SampleTable lf = park2_table(10, 6, 0.2);
  const SampleTable hf = park2_table(4, 7, 1.0);
  CvSpec spec;
  spec.folds = 5;  // more folds than HF samples
  CHECK_THROWS_AS(run_cv(lf, hf, std::nullopt, spec), ConfigError);
  spec.folds = 1;
  CHECK_THROWS_AS(run_cv(lf, hf, std::nullopt, spec), ConfigError);
}

TEST_CASE("cv: aligned LF/HF tables report their response correlation") {
  SampleTable hf = park2_table(12, 8, 1.0);
  SampleTable lf;
  lf.points = hf.points;
  lf.responses.resize(12);
  const auto& fam = find_family("park2");
  for (Index i = 0; i < 12; ++i)
    lf.responses[i] = fam.lf(lf.points.row(i).transpose(), 0.2);
  CvSpec spec;
  spec.folds = 3;
  spec.gwo_population = 6;
  spec.gwo_iterations = 8;
  const auto result = run_cv(lf, hf, std::nullopt, spec);
  CHECK(result.rows[0].pearson_r2 > 0.0);
  CHECK(result.rows[0].pearson_r2 <= 1.0);
}

TEST_CASE("write_result emits the documented schema plus wall sidecar") {
  TempDir dir;
  auto spec = tiny_spec();
  spec.models = {"cosvr"};
  spec.m_grid = {0.5};
  spec.repeats = 1;
  const auto path = dir.file("out.csv");
  write_result(run_sweep(spec), path);
  const std::string text = slurp(path);
  CHECK(text.find("# spec_hash: ") != std::string::npos);
  CHECK(text.find("# domain: ") != std::string::npos);
  CHECK(text.find("park2,0.5,cosvr,") != std::string::npos);
  CHECK(std::filesystem::exists(path + ".wall.csv"));
  const std::string wall = slurp(path + ".wall.csv");
  CHECK(wall.find("not byte-deterministic") != std::string::npos);
}
