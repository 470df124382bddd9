#include "mfs/gwo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfs {

void GwoConfig::validate() const {
  if (population < 4)
    throw ConfigError("gwo: population must be >= 4 (three leaders plus one)");
  if (iterations < 1) throw ConfigError("gwo: iterations must be >= 1");
  if (bounds.empty()) throw ConfigError("gwo: bounds are empty");
  if (!log_scale_mask.empty() && log_scale_mask.size() != bounds.size())
    throw ConfigError("gwo: log_scale_mask length != bounds length");
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const auto& [lo, hi] = bounds[k];
    if (lo > hi)
      throw ConfigError("gwo: inverted bounds on coordinate " + std::to_string(k));
    const bool logged = !log_scale_mask.empty() && log_scale_mask[k];
    if (logged && lo <= 0.0)
      throw ConfigError("gwo: log-scaled coordinate " + std::to_string(k) +
                        " needs positive bounds");
  }
}

CoefficientSet coefficient_schedule(int t, int total, Index dim, Rng& rng) {
  CoefficientSet cs;
  cs.a = 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(total));
  cs.A.resize(dim);
  cs.C.resize(dim);
  for (Index k = 0; k < dim; ++k) {
    const double r1 = unit_draw(rng);
    const double r2 = unit_draw(rng);
    cs.A[k] = 2.0 * cs.a * r1 - cs.a;
    cs.C[k] = 2.0 * r2;
  }
  return cs;
}

namespace {

struct Leader {
  double score = std::numeric_limits<double>::infinity();
  Vector position;  // working space
};

// Merge the retained leaders with the freshly scored population and keep the
// three best. Stable order: existing leaders first, then wolves by index.
void rerank(std::vector<Leader>& leaders, const Matrix& wolves,
            const Vector& scores) {
  std::vector<Leader> cand = leaders;
  for (Index w = 0; w < wolves.rows(); ++w)
    cand.push_back({scores[w], wolves.row(w).transpose()});
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Leader& a, const Leader& b) { return a.score < b.score; });
  cand.resize(std::min<std::size_t>(3, cand.size()));
  leaders = std::move(cand);
}

}  // namespace

GwoResult gwo_minimize(const std::function<double(const Vector&)>& objective,
                       const GwoConfig& cfg) {
  cfg.validate();
  const Index dim = static_cast<Index>(cfg.bounds.size());
  const Index pop = cfg.population;

  Vector wlo(dim), whi(dim);
  std::vector<bool> logged(dim, false);
  for (Index k = 0; k < dim; ++k) {
    logged[k] = !cfg.log_scale_mask.empty() && cfg.log_scale_mask[k];
    wlo[k] = logged[k] ? std::log(cfg.bounds[k].first) : cfg.bounds[k].first;
    whi[k] = logged[k] ? std::log(cfg.bounds[k].second) : cfg.bounds[k].second;
  }
  auto to_user = [&](const Vector& w) {
    Vector u = w;
    for (Index k = 0; k < dim; ++k)
      if (logged[k]) u[k] = std::exp(w[k]);
    return u;
  };

  Rng rng(cfg.seed);
  Matrix wolves(pop, dim);
  for (Index w = 0; w < pop; ++w)
    for (Index k = 0; k < dim; ++k)
      wolves(w, k) = wlo[k] + unit_draw(rng) * (whi[k] - wlo[k]);

  Vector scores(pop);
  auto evaluate_all = [&]() {
    if (cfg.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (Index w = 0; w < pop; ++w) {
        double s = objective(to_user(wolves.row(w).transpose()));
        scores[w] = std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
      }
    } else {
      for (Index w = 0; w < pop; ++w) {
        double s = objective(to_user(wolves.row(w).transpose()));
        scores[w] = std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
      }
    }
  };

  GwoResult result;
  std::vector<Leader> leaders;

  evaluate_all();
  result.evaluations = pop;
  rerank(leaders, wolves, scores);
  result.history.push_back(leaders[0].score);

  for (int t = 0; t < cfg.iterations; ++t) {
    for (Index w = 0; w < pop; ++w) {
      Vector next = Vector::Zero(dim);
      for (std::size_t l = 0; l < 3; ++l) {
        const CoefficientSet cs = coefficient_schedule(t, cfg.iterations, dim, rng);
        const Vector& xl = leaders[l].position;
        for (Index k = 0; k < dim; ++k) {
          const double d = std::abs(cs.C[k] * xl[k] - wolves(w, k));
          next[k] += xl[k] - cs.A[k] * d;
        }
      }
      for (Index k = 0; k < dim; ++k)
        wolves(w, k) = std::clamp(next[k] / 3.0, wlo[k], whi[k]);
    }
    evaluate_all();
    result.evaluations += pop;
    rerank(leaders, wolves, scores);
    result.history.push_back(leaders[0].score);
  }

  result.best_position = to_user(leaders[0].position);
  result.best_score = leaders[0].score;
  return result;
}

}  // namespace mfs
