#include "mfs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "mfs/cosvr.hpp"
#include "mfs/doe.hpp"
#include "mfs/lssvr.hpp"
#include "mfs/rng.hpp"
#include "mfs/solve.hpp"

namespace mfs {

namespace {

constexpr std::uint64_t kSaltHfDesign = 1;
constexpr std::uint64_t kSaltLfDesign = 2;
constexpr std::uint64_t kSaltTestSet = 3;
constexpr std::uint64_t kSaltCosvrFit = 4;
constexpr std::uint64_t kSaltLssvrFit = 5;
constexpr std::uint64_t kSaltRedraw = 6;
constexpr std::uint64_t kSaltCorrSet = 7;
constexpr std::uint64_t kSaltCvFolds = 8;

constexpr int kMaxRedraws = 100000;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

CosvrObjective objective_of(const std::string& name) {
  if (name == "training_rmse") return CosvrObjective::TrainingRmse;
  if (name == "loo") return CosvrObjective::LeaveOneOutRmse;
  throw ConfigError("unknown objective '" + name + "' (training_rmse | loo)");
}

std::string format_box(const DomainBox& box) {
  std::ostringstream os;
  for (Index k = 0; k < box.dimension(); ++k)
    os << (k ? "," : "") << format_double(box.lo[k]) << ":"
       << format_double(box.hi[k]);
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Redraws invalid rows uniformly until the family can evaluate them.
void repair_design(Matrix& pts, const BenchmarkFamily& family,
                   const DomainBox& box, std::uint64_t redraw_seed,
                   long& resamples) {
  Rng rng(redraw_seed);
  for (Index i = 0; i < pts.rows(); ++i) {
    int attempts = 0;
    while (!family.is_valid(pts.row(i).transpose())) {
      if (++attempts > kMaxRedraws)
        throw DataError("rejection sampling exhausted for family '" +
                        family.name + "'");
      for (Index k = 0; k < pts.cols(); ++k)
        pts(i, k) = range_draw(rng, box.lo[k], box.hi[k]);
      ++resamples;
    }
  }
}

Vector eval_hf(const BenchmarkFamily& family, const Matrix& pts) {
  Vector y(pts.rows());
  for (Index i = 0; i < pts.rows(); ++i) y[i] = family.hf(pts.row(i).transpose());
  return y;
}

Vector eval_lf(const BenchmarkFamily& family, const Matrix& pts, double m) {
  Vector y(pts.rows());
  for (Index i = 0; i < pts.rows(); ++i)
    y[i] = family.lf(pts.row(i).transpose(), m);
  return y;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (m_grid.empty()) throw ConfigError("spec: m_grid is empty");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 0.0 || m_grid[i] > 1.0)
      throw ConfigError("spec: m_grid values must lie in [0,1]");
    if (i > 0 && m_grid[i] < m_grid[i - 1])
      throw ConfigError("spec: m_grid must be sorted ascending");
  }
  if (repeats < 1) throw ConfigError("spec: repeats must be >= 1");
  if (test_points < 2) throw ConfigError("spec: test_points must be >= 2");
  if (models.empty()) throw ConfigError("spec: no models requested");
  for (const auto& m : models)
    if (m != "cosvr" && m != "lssvr_hf")
      throw ConfigError("spec: unknown model '" + m + "' (cosvr | lssvr_hf)");
  if (gwo_population < 4 || gwo_iterations < 1)
    throw ConfigError("spec: invalid GWO budget");
  if (!(gamma > 0.0)) throw ConfigError("spec: gamma must be > 0");
  objective_of(objective);
}

std::string ExperimentSpec::canonical() const {
  std::ostringstream os;
  os << "family=" << family << ";m_grid=";
  for (double m : m_grid) os << format_double(m) << ",";
  os << ";hf=" << hf_budget << ";lf=" << lf_budget << ";repeats=" << repeats
     << ";test=" << test_points << ";seed=" << seed << ";models=";
  for (const auto& m : models) os << m << ",";
  os << ";pop=" << gwo_population << ";iters=" << gwo_iterations;
  os << ";domain=" << (domain_override ? format_box(*domain_override) : "default");
  os << ";gamma=" << format_double(gamma) << ";objective=" << objective;
  return os.str();
}

Index expand_budget(const std::string& rule, Index dimension) {
  if (rule.empty()) throw ConfigError("empty sample budget");
  std::size_t pos = 0;
  long k = 0;
  try {
    k = std::stol(rule, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad sample budget '" + rule + "'");
  }
  Index n = 0;
  if (pos == rule.size()) {
    n = static_cast<Index>(k);
  } else if (pos + 1 == rule.size() && rule[pos] == 's') {
    n = static_cast<Index>(k) * dimension;
  } else {
    throw ConfigError("bad sample budget '" + rule + "' (use an integer or '<k>s')");
  }
  if (n < 1) throw ConfigError("sample budget '" + rule + "' expands to " +
                               std::to_string(n));
  return n;
}

ExperimentSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");

  ExperimentSpec spec;
  spec.m_grid.clear();
  bool m_grid_set = false;

  auto parse_list = [](const std::string& v) {
    std::vector<std::string> items;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      items.push_back(item.substr(b, e - b + 1));
    }
    return items;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "family") {
        spec.family = value;
      } else if (key == "m_grid") {
        for (const auto& item : parse_list(value))
          spec.m_grid.push_back(std::stod(item));
        m_grid_set = true;
      } else if (key == "hf_budget") {
        spec.hf_budget = value;
      } else if (key == "lf_budget") {
        spec.lf_budget = value;
      } else if (key == "repeats") {
        spec.repeats = std::stoi(value);
      } else if (key == "test_points") {
        spec.test_points = std::stoi(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "models") {
        spec.models = parse_list(value);
      } else if (key == "gwo.population") {
        spec.gwo_population = std::stoi(value);
      } else if (key == "gwo.iterations") {
        spec.gwo_iterations = std::stoi(value);
      } else if (key == "gamma") {
        spec.gamma = std::stod(value);
      } else if (key == "objective") {
        spec.objective = value;
      } else if (key == "domain_override") {
        std::vector<double> lo, hi;
        for (const auto& item : parse_list(value)) {
          const auto colon = item.find(':');
          if (colon == std::string::npos)
            throw ConfigError("domain_override axes must be 'lo:hi'");
          lo.push_back(std::stod(item.substr(0, colon)));
          hi.push_back(std::stod(item.substr(colon + 1)));
        }
        Vector vlo(static_cast<Index>(lo.size())), vhi(static_cast<Index>(hi.size()));
        for (std::size_t k = 0; k < lo.size(); ++k) {
          vlo[static_cast<Index>(k)] = lo[k];
          vhi[static_cast<Index>(k)] = hi[k];
        }
        spec.domain_override = DomainBox(vlo, vhi);
      } else {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for '" +
                        key + "': " + e.what());
    }
  }
  if (!m_grid_set)
    spec.m_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  spec.validate();
  return spec;
}

Matrix valid_lhs(const BenchmarkFamily& family, const DomainBox& box, Index n,
                 std::uint64_t seed, long& resamples) {
  Matrix pts = scale(lhs(n, box.dimension(), seed), box);
  repair_design(pts, family, box, mix_seed(seed, kSaltRedraw), resamples);
  return pts;
}

Matrix valid_uniform(const BenchmarkFamily& family, const DomainBox& box,
                     Index n, std::uint64_t seed, long& resamples) {
  Matrix pts = scale(uniform_sample(n, box.dimension(), seed), box);
  repair_design(pts, family, box, mix_seed(seed, kSaltRedraw), resamples);
  return pts;
}

std::vector<double> r2_curve(const BenchmarkFamily& family,
                             const DomainBox& box,
                             const std::vector<double>& m_grid, Index n_points,
                             std::uint64_t seed, long& resamples) {
  const Matrix pts = valid_uniform(family, box, n_points, seed, resamples);
  const Vector y_h = eval_hf(family, pts);
  std::vector<double> curve;
  curve.reserve(m_grid.size());
  for (double m : m_grid) curve.push_back(pearson_r2(y_h, eval_lf(family, pts, m)));
  return curve;
}

namespace {

struct CellOutcome {
  std::vector<double> r2;       // aligned with spec.models
  std::vector<double> wall_ms;  // aligned with spec.models
  long resamples = 0;
};

CellOutcome run_cell(const ExperimentSpec& spec, const BenchmarkFamily& family,
                     const DomainBox& box, Index hf_n, Index lf_n,
                     std::size_t m_index, int repeat) {
  const double m = spec.m_grid[m_index];
  const std::uint64_t base =
      mix_seed(spec.seed, static_cast<std::uint64_t>(m_index),
               static_cast<std::uint64_t>(repeat));
  CellOutcome out;

  const Matrix x_hf = valid_lhs(family, box, hf_n, mix_seed(base, kSaltHfDesign),
                                out.resamples);
  const Matrix x_lf = valid_lhs(family, box, lf_n, mix_seed(base, kSaltLfDesign),
                                out.resamples);
  const Matrix x_test = valid_uniform(family, box, spec.test_points,
                                      mix_seed(base, kSaltTestSet), out.resamples);
  const Vector y_hf = eval_hf(family, x_hf);
  const Vector y_lf = eval_lf(family, x_lf, m);
  const Vector y_test = eval_hf(family, x_test);

  GwoConfig gwo;
  gwo.population = spec.gwo_population;
  gwo.iterations = spec.gwo_iterations;

  for (const auto& model_name : spec.models) {
    const double t0 = now_ms();
    double r2 = std::numeric_limits<double>::quiet_NaN();
    if (model_name == "cosvr") {
      MultiFidelityData data(SampleSet(x_lf, y_lf, box),
                             SampleSet(x_hf, y_hf, box));
      gwo.seed = mix_seed(base, kSaltCosvrFit);
      const auto fit = fit_cosvr(data, default_cosvr_search(box.dimension()),
                                 gwo, spec.gamma, objective_of(spec.objective));
      if (fit.model)
        r2 = r_squared(y_test, predict_cosvr_batch(*fit.model, x_test));
    } else {  // lssvr_hf
      SampleSet data(x_hf, y_hf, box);
      gwo.seed = mix_seed(base, kSaltLssvrFit);
      const auto fit = fit_lssvr(data, default_lssvr_search(box.dimension()), gwo);
      if (fit.model)
        r2 = r_squared(y_test, predict_lssvr_batch(*fit.model, x_test));
    }
    out.r2.push_back(r2);
    out.wall_ms.push_back(now_ms() - t0);
  }
  return out;
}

}  // namespace

ExperimentResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.family == "external")
    throw ConfigError("run_sweep: 'external' data runs through cv, not sweep");
  const BenchmarkFamily& family = find_family(spec.family);
  const DomainBox box = spec.domain_override.value_or(family.domain);
  if (box.dimension() != family.dimension)
    throw ConfigError("spec: domain_override dimension != family dimension");
  const Index hf_n = expand_budget(spec.hf_budget, family.dimension);
  const Index lf_n = expand_budget(spec.lf_budget, family.dimension);
  if (hf_n < 2) throw ConfigError("spec: HF budget must be >= 2");

  ExperimentResult result;
  result.spec_hash = std::to_string(fnv1a(spec.canonical()));
  result.domain_used = format_box(box);

  // Correlation column: one shared sample per m, independent of repeats and
  // of the models requested.
  long corr_resamples = 0;
  const std::vector<double> corr = r2_curve(
      family, box, spec.m_grid, spec.test_points,
      mix_seed(spec.seed, kSaltCorrSet), corr_resamples);

  const std::size_t n_m = spec.m_grid.size();
  const std::size_t n_cells = n_m * static_cast<std::size_t>(spec.repeats);
  std::vector<CellOutcome> cells(n_cells);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_cells); ++c) {
    const std::size_t mi = static_cast<std::size_t>(c) / spec.repeats;
    const int rep = static_cast<int>(static_cast<std::size_t>(c) % spec.repeats);
    cells[static_cast<std::size_t>(c)] =
        run_cell(spec, family, box, hf_n, lf_n, mi, rep);
  }

  result.resamples = corr_resamples;
  for (const auto& cell : cells) result.resamples += cell.resamples;

  for (std::size_t mi = 0; mi < n_m; ++mi) {
    for (std::size_t mdl = 0; mdl < spec.models.size(); ++mdl) {
      std::vector<double> per_repeat;
      double wall = 0.0;
      for (int rep = 0; rep < spec.repeats; ++rep) {
        const auto& cell = cells[mi * spec.repeats + rep];
        per_repeat.push_back(cell.r2[mdl]);
        wall += cell.wall_ms[mdl];
      }
      const AccuracySummary summary = summarize(per_repeat);
      ResultRow row;
      row.family = spec.family;
      row.m = spec.m_grid[mi];
      row.model = spec.models[mdl];
      row.mean_r2 = summary.mean_r2;
      row.std_r2 = summary.std_r2;
      row.pearson_r2 = corr[mi];
      row.n_repeats = summary.n_repeats;
      row.seed = spec.seed;
      row.wall_ms = wall;
      result.rows.push_back(row);
      result.summaries.push_back(summary);
    }
  }
  return result;
}

ExperimentResult run_cv(const SampleTable& lf, const SampleTable& hf,
                        const std::optional<SampleTable>& test,
                        const CvSpec& spec) {
  if (spec.folds < 2) throw ConfigError("cv: folds must be >= 2");
  const Index n_h = hf.points.rows();
  if (n_h < spec.folds)
    throw ConfigError("cv: fewer HF samples (" + std::to_string(n_h) +
                      ") than folds (" + std::to_string(spec.folds) + ")");
  if (lf.points.cols() != hf.points.cols())
    throw DimensionError("cv: LF/HF input dimensions differ");
  for (const auto& m : spec.models)
    if (m != "cosvr" && m != "lssvr_hf")
      throw ConfigError("cv: unknown model '" + m + "'");
  const Index s = hf.points.cols();

  // Shared domain box: bounding box of the training inputs, degenerate axes
  // widened so the unit-cube rescaling stays invertible.
  Vector lo = lf.points.colwise().minCoeff().transpose();
  Vector hi = lf.points.colwise().maxCoeff().transpose();
  for (Index k = 0; k < s; ++k) {
    lo[k] = std::min(lo[k], hf.points.col(k).minCoeff());
    hi[k] = std::max(hi[k], hf.points.col(k).maxCoeff());
    if (!(hi[k] > lo[k])) {
      const double pad = std::max(1.0, std::abs(lo[k])) * 0.5;
      lo[k] -= pad;
      hi[k] += pad;
    }
  }
  const DomainBox box(lo, hi);

  // Fold assignment keyed to sample identity: rows are ranked canonically
  // (lexicographic by value), then the seeded permutation deals folds
  // round-robin, so shuffling the input file does not move samples between
  // folds.
  std::vector<Index> canon(static_cast<std::size_t>(n_h));
  std::iota(canon.begin(), canon.end(), Index{0});
  std::sort(canon.begin(), canon.end(), [&](Index a, Index b) {
    for (Index k = 0; k < s; ++k) {
      if (hf.points(a, k) != hf.points(b, k))
        return hf.points(a, k) < hf.points(b, k);
    }
    return hf.responses[a] < hf.responses[b];
  });
  Rng fold_rng(mix_seed(spec.seed, kSaltCvFolds));
  const auto perm = random_permutation(static_cast<std::size_t>(n_h), fold_rng);
  std::vector<int> fold_of(static_cast<std::size_t>(n_h));
  for (std::size_t i = 0; i < perm.size(); ++i)
    fold_of[static_cast<std::size_t>(canon[perm[i]])] =
        static_cast<int>(i % static_cast<std::size_t>(spec.folds));

  GwoConfig gwo;
  gwo.population = spec.gwo_population;
  gwo.iterations = spec.gwo_iterations;

  std::vector<std::vector<double>> per_model(spec.models.size());
  std::vector<double> wall(spec.models.size(), 0.0);

  for (int f = 0; f < spec.folds; ++f) {
    std::vector<Index> in_fold, held_out;
    for (Index i = 0; i < n_h; ++i)
      (fold_of[static_cast<std::size_t>(i)] == f ? in_fold : held_out).push_back(i);

    Matrix train_pts(static_cast<Index>(in_fold.size()), s);
    Vector train_y(static_cast<Index>(in_fold.size()));
    for (std::size_t i = 0; i < in_fold.size(); ++i) {
      train_pts.row(static_cast<Index>(i)) = hf.points.row(in_fold[i]);
      train_y[static_cast<Index>(i)] = hf.responses[in_fold[i]];
    }

    Matrix eval_pts;
    Vector eval_y;
    if (test) {
      eval_pts = test->points;
      eval_y = test->responses;
    } else {
      eval_pts.resize(static_cast<Index>(held_out.size()), s);
      eval_y.resize(static_cast<Index>(held_out.size()));
      for (std::size_t i = 0; i < held_out.size(); ++i) {
        eval_pts.row(static_cast<Index>(i)) = hf.points.row(held_out[i]);
        eval_y[static_cast<Index>(i)] = hf.responses[held_out[i]];
      }
    }

    const std::uint64_t base = mix_seed(spec.seed, static_cast<std::uint64_t>(f));
    for (std::size_t mdl = 0; mdl < spec.models.size(); ++mdl) {
      const double t0 = now_ms();
      double r2 = std::numeric_limits<double>::quiet_NaN();
      try {
        if (spec.models[mdl] == "cosvr") {
          MultiFidelityData data(SampleSet(lf.points, lf.responses, box),
                                 SampleSet(train_pts, train_y, box));
          gwo.seed = mix_seed(base, kSaltCosvrFit);
          const auto fit = fit_cosvr(data, default_cosvr_search(s), gwo,
                                     spec.gamma, objective_of(spec.objective));
          if (fit.model)
            r2 = r_squared(eval_y, predict_cosvr_batch(*fit.model, eval_pts));
        } else {
          SampleSet data(train_pts, train_y, box);
          gwo.seed = mix_seed(base, kSaltLssvrFit);
          const auto fit = fit_lssvr(data, default_lssvr_search(s), gwo);
          if (fit.model)
            r2 = r_squared(eval_y, predict_lssvr_batch(*fit.model, eval_pts));
        }
      } catch (const Error&) {
        // fold too small to train this model; R^2 stays NaN
      }
      per_model[mdl].push_back(r2);
      wall[mdl] += now_ms() - t0;
    }
  }

  // HF/LF correlation is only defined when both tables share the same points.
  double corr = std::numeric_limits<double>::quiet_NaN();
  if (lf.points.rows() == hf.points.rows() &&
      (lf.points.array() == hf.points.array()).all())
    corr = pearson_r2(hf.responses, lf.responses);

  std::ostringstream canonical;
  canonical << "cv;folds=" << spec.folds << ";seed=" << spec.seed
            << ";pop=" << spec.gwo_population << ";iters=" << spec.gwo_iterations
            << ";gamma=" << format_double(spec.gamma)
            << ";objective=" << spec.objective;

  ExperimentResult result;
  result.spec_hash = std::to_string(fnv1a(canonical.str()));
  result.domain_used = format_box(box);
  for (std::size_t mdl = 0; mdl < spec.models.size(); ++mdl) {
    const AccuracySummary summary = summarize(per_model[mdl]);
    ResultRow row;
    row.family = "external";
    row.m = 0.0;
    row.model = spec.models[mdl];
    row.mean_r2 = summary.mean_r2;
    row.std_r2 = summary.std_r2;
    row.pearson_r2 = corr;
    row.n_repeats = summary.n_repeats;
    row.seed = spec.seed;
    row.wall_ms = wall[mdl];
    result.rows.push_back(row);
    result.summaries.push_back(summary);
  }
  return result;
}

void write_result(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "# spec_hash: " << result.spec_hash << "\n";
  out << "# domain: " << result.domain_used << "\n";
  out << "# resamples: " << result.resamples << "\n";
  out << "family,m,model,mean_r2,std_r2,pearson_r2,n_repeats,seed\n";
  for (const auto& row : result.rows) {
    out << row.family << "," << format_double(row.m) << "," << row.model << ","
        << format_double(row.mean_r2) << "," << format_double(row.std_r2) << ","
        << format_double(row.pearson_r2) << "," << row.n_repeats << ","
        << row.seed << "\n";
  }
  if (!out) throw DataError("write failed for '" + path + "'");

  std::ofstream side(path + ".wall.csv");
  if (!side) throw DataError("cannot write '" + path + ".wall.csv'");
  side << "# wall times are measured; this sidecar is not byte-deterministic\n";
  side << "family,m,model,wall_ms\n";
  for (const auto& row : result.rows)
    side << row.family << "," << format_double(row.m) << "," << row.model << ","
         << format_double(row.wall_ms) << "\n";
}

}  // namespace mfs
