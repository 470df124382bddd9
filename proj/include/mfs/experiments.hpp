#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfs/benchmarks.hpp"
#include "mfs/csv.hpp"
#include "mfs/metrics.hpp"
#include "mfs/types.hpp"

namespace mfs {

// Declarative description of an m-sweep study. Budgets accept either plain
// integers or the symbolic rules "<k>s" (k times the input dimension), so
// "2s"/"10s" expand to the standard HF/LF budgets.
struct ExperimentSpec {
  std::string family = "currin";
  std::vector<double> m_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                0.6, 0.7, 0.8, 0.9, 1.0};
  std::string hf_budget = "2s";
  std::string lf_budget = "10s";
  int repeats = 30;
  int test_points = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> models = {"cosvr"};
  int gwo_population = 30;
  int gwo_iterations = 200;
  std::optional<DomainBox> domain_override;
  double gamma = 1e4;
  std::string objective = "training_rmse";  // or "loo"

  void validate() const;
  std::string canonical() const;  // deterministic serialization for hashing
};

// Parses the flat key = value config format (one key per line, '#' comments);
// unknown keys are a configuration error. Keys mirror ExperimentSpec fields:
// family, m_grid, hf_budget, lf_budget, repeats, test_points, seed, models,
// gwo.population, gwo.iterations, domain_override, gamma, objective.
ExperimentSpec parse_config(const std::string& path);

struct ResultRow {
  std::string family;
  double m = 0.0;
  std::string model;
  double mean_r2 = 0.0;
  double std_r2 = 0.0;
  double pearson_r2 = 0.0;
  int n_repeats = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;  // measured, excluded from determinism guarantees
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<AccuracySummary> summaries;  // aligned with rows
  std::string spec_hash;
  std::string domain_used;
  long resamples = 0;  // points rejected at singular subsets and redrawn
};

// Expands "<k>s" budget rules against the input dimension.
Index expand_budget(const std::string& rule, Index dimension);

// Seeded LHS design / uniform sample on the box with rejection of points the
// family cannot evaluate; rejected draws are counted into `resamples`.
Matrix valid_lhs(const BenchmarkFamily& family, const DomainBox& box, Index n,
                 std::uint64_t seed, long& resamples);
Matrix valid_uniform(const BenchmarkFamily& family, const DomainBox& box,
                     Index n, std::uint64_t seed, long& resamples);

// Monte Carlo correlation curve: squared Pearson correlation between HF and
// LF responses on one shared uniform sample, per m value.
std::vector<double> r2_curve(const BenchmarkFamily& family,
                             const DomainBox& box,
                             const std::vector<double>& m_grid, Index n_points,
                             std::uint64_t seed, long& resamples);

// Runs the full sweep: per (m, repeat) cell a fresh DoE, model fits and test
// R^2 on a fresh uniform test set; aggregates over repeats. Cells execute in
// parallel with results reduced in (m index, repeat index) order, so output
// is a pure function of the spec.
ExperimentResult run_sweep(const ExperimentSpec& spec);

// k-fold cross-validation on external LF/HF tables: each fold trains Co_SVR
// on all LF samples plus that fold's HF samples (and the single-fidelity
// baseline on the same HF fold), evaluating on the test table when given,
// otherwise on the held-out HF samples.
struct CvSpec {
  int folds = 5;
  std::uint64_t seed = 0;
  std::vector<std::string> models = {"cosvr", "lssvr_hf"};
  int gwo_population = 30;
  int gwo_iterations = 200;
  double gamma = 1e4;
  std::string objective = "training_rmse";
};
ExperimentResult run_cv(const SampleTable& lf, const SampleTable& hf,
                        const std::optional<SampleTable>& test,
                        const CvSpec& spec);

// Writes the result CSV (deterministic bytes) plus the wall-time sidecar
// "<path>.wall.csv" (non-deterministic, excluded from byte comparisons).
void write_result(const ExperimentResult& result, const std::string& path);

}  // namespace mfs
