#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "mfs/benchmarks.hpp"
#include "mfs/cosvr.hpp"
#include "mfs/csv.hpp"
#include "mfs/doe.hpp"
#include "mfs/experiments.hpp"
#include "mfs/model_io.hpp"

namespace {

using namespace mfs;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct CvArgs {
  std::string lf_path, hf_path, out_path, test_path;
  CvSpec spec;
};

struct FitArgs {
  std::string lf_path, hf_path, model_out;
  std::uint64_t seed = 0;
  double gamma = 1e4;
  int population = 30;
  int iterations = 200;
  std::string objective = "training_rmse";
};

SampleSet to_sample_set(const SampleTable& table, const DomainBox& box) {
  return SampleSet(table.points, table.responses, box);
}

DomainBox bounding_box(const SampleTable& lf, const SampleTable& hf) {
  const Index s = hf.points.cols();
  Vector lo(s), hi(s);
  for (Index k = 0; k < s; ++k) {
    lo[k] = std::min(lf.points.col(k).minCoeff(), hf.points.col(k).minCoeff());
    hi[k] = std::max(lf.points.col(k).maxCoeff(), hf.points.col(k).maxCoeff());
    if (!(hi[k] > lo[k])) {
      const double pad = std::max(1.0, std::abs(lo[k])) * 0.5;
      lo[k] -= pad;
      hi[k] += pad;
    }
  }
  return DomainBox(lo, hi);
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path) {
  const ExperimentSpec spec = parse_config(config_path);
  const ExperimentResult result = run_sweep(spec);
  write_result(result, out_path);
  std::cout << "wrote " << result.rows.size() << " rows to " << out_path
            << " (resamples: " << result.resamples << ")\n";
  return kExitOk;
}

int run_cv_cmd(const CvArgs& args) {
  const SampleTable lf = read_samples(args.lf_path);
  const SampleTable hf = read_samples(args.hf_path);
  std::optional<SampleTable> test;
  if (!args.test_path.empty()) test = read_samples(args.test_path);
  const ExperimentResult result = run_cv(lf, hf, test, args.spec);
  write_result(result, args.out_path);
  for (const auto& row : result.rows)
    std::cout << row.model << ": mean R^2 = " << row.mean_r2
              << " (std " << row.std_r2 << ", " << row.n_repeats << " folds)\n";
  return kExitOk;
}

int run_doe_cmd(const std::string& family_name, Index n, std::uint64_t seed,
                const std::string& out_path, const std::string& eval_mode,
                double m) {
  const BenchmarkFamily& family = find_family(family_name);
  long resamples = 0;
  const Matrix pts = valid_lhs(family, family.domain, n, seed, resamples);
  if (eval_mode == "none") {
    write_samples(out_path, pts, nullptr);
  } else {
    Vector y(pts.rows());
    for (Index i = 0; i < pts.rows(); ++i)
      y[i] = eval_mode == "hf" ? family.hf(pts.row(i).transpose())
                               : family.lf(pts.row(i).transpose(), m);
    write_samples(out_path, pts, &y);
  }
  std::cout << "wrote " << n << " points to " << out_path
            << " (resamples: " << resamples << ")\n";
  return kExitOk;
}

int run_fit_cmd(const FitArgs& args) {
  const SampleTable lf = read_samples(args.lf_path);
  const SampleTable hf = read_samples(args.hf_path);
  const DomainBox box = bounding_box(lf, hf);
  MultiFidelityData data(to_sample_set(lf, box), to_sample_set(hf, box));

  GwoConfig gwo;
  gwo.population = args.population;
  gwo.iterations = args.iterations;
  gwo.seed = args.seed;
  const CosvrObjective objective = args.objective == "loo"
                                       ? CosvrObjective::LeaveOneOutRmse
                                       : CosvrObjective::TrainingRmse;
  const CosvrFitResult fit = fit_cosvr(data, default_cosvr_search(box.dimension()),
                                       gwo, args.gamma, objective);
  if (!fit.model) {
    std::cerr << "fit failed: best search position is untrainable\n";
    return kExitNumerical;
  }
  if (fit.all_penalty)
    std::cerr << "warning: every search candidate failed; model quality is "
                 "not meaningful\n";
  save_model(*fit.model, args.model_out);
  std::cout << "fit cost " << fit.search.best_score << " ("
            << fit.search.evaluations << " evaluations); model written to "
            << args.model_out << "\n";
  return kExitOk;
}

int run_predict_cmd(const std::string& model_path, const std::string& points_path,
                    const std::string& out_path) {
  const Matrix pts = read_points(points_path);
  Vector pred;
  if (peek_model_kind(model_path) == ModelKind::CoSvr) {
    const CoSvrModel model = load_cosvr_model(model_path);
    pred = predict_cosvr_batch(model, pts);
  } else {
    const LssvrModel model = load_lssvr_model(model_path);
    pred = predict_lssvr_batch(model, pts);
  }
  write_samples(out_path, pts, &pred);
  std::cout << "wrote " << pred.size() << " predictions to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-fidelity LS-SVR toolkit"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run an m-sweep study from a config file");
  std::string config_path, out_path;
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_path, "output result CSV")->required();

  auto* cv = app.add_subcommand("cv", "k-fold cross-validation on external data");
  CvArgs cv_args;
  cv->add_option("--lf", cv_args.lf_path, "LF samples CSV")->required();
  cv->add_option("--hf", cv_args.hf_path, "HF samples CSV")->required();
  cv->add_option("--folds", cv_args.spec.folds, "fold count")->required();
  cv->add_option("--out", cv_args.out_path, "output result CSV")->required();
  cv->add_option("--test", cv_args.test_path, "optional held-out test CSV");
  cv->add_option("--seed", cv_args.spec.seed, "fold/search seed");
  cv->add_option("--gamma", cv_args.spec.gamma, "regularization gamma");
  cv->add_option("--gwo-population", cv_args.spec.gwo_population, "GWO wolves");
  cv->add_option("--gwo-iterations", cv_args.spec.gwo_iterations, "GWO iterations");
  cv->add_option("--models", cv_args.spec.models, "models: cosvr lssvr_hf");
  cv->add_option("--objective", cv_args.spec.objective,
                 "search objective: training_rmse | loo");

  auto* doe_cmd = app.add_subcommand("doe", "export a Latin hypercube design");
  std::string family_name, eval_mode = "none";
  Index doe_n = 0;
  std::uint64_t doe_seed = 0;
  double doe_m = 0.0;
  doe_cmd->add_option("--family", family_name, "benchmark family")->required();
  doe_cmd->add_option("--n", doe_n, "sample count")->required();
  doe_cmd->add_option("--seed", doe_seed, "design seed")->required();
  doe_cmd->add_option("--out", out_path, "output CSV")->required();
  doe_cmd->add_option("--eval", eval_mode,
                      "response column: none (default), hf, or lf");
  doe_cmd->add_option("--m", doe_m, "correlation knob for --eval lf");

  auto* fit = app.add_subcommand("fit", "fit a Co_SVR model to external data");
  FitArgs fit_args;
  fit->add_option("--lf", fit_args.lf_path, "LF samples CSV")->required();
  fit->add_option("--hf", fit_args.hf_path, "HF samples CSV")->required();
  fit->add_option("--model-out", fit_args.model_out, "output model file")->required();
  fit->add_option("--seed", fit_args.seed, "search seed");
  fit->add_option("--gamma", fit_args.gamma, "regularization gamma");
  fit->add_option("--gwo-population", fit_args.population, "GWO wolves");
  fit->add_option("--gwo-iterations", fit_args.iterations, "GWO iterations");
  fit->add_option("--objective", fit_args.objective,
                  "search objective: training_rmse | loo");

  auto* predict = app.add_subcommand("predict", "evaluate a saved model");
  std::string model_path, points_path;
  predict->add_option("--model", model_path, "model file")->required();
  predict->add_option("--points", points_path, "points CSV (x1..xs)")->required();
  predict->add_option("--out", out_path, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(config_path, out_path);
    if (cv->parsed()) return run_cv_cmd(cv_args);
    if (doe_cmd->parsed()) {
      if (eval_mode != "none" && eval_mode != "hf" && eval_mode != "lf")
        throw mfs::ConfigError("--eval must be none, hf, or lf");
      return run_doe_cmd(family_name, doe_n, doe_seed, out_path, eval_mode, doe_m);
    }
    if (fit->parsed()) return run_fit_cmd(fit_args);
    if (predict->parsed())
      return run_predict_cmd(model_path, points_path, out_path);
  } catch (const mfs::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mfs::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mfs::RangeError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mfs::DimensionError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mfs::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
