// Timings for the data-parallel kernels against their serial reference
// implementations: kernel matrix assembly, batch prediction and GWO-driven
// model fits. Both paths compute identical values; this target reports the
// speedup of the OpenMP path on the current machine.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "mfs/benchmarks.hpp"
#include "mfs/cosvr.hpp"
#include "mfs/doe.hpp"
#include "mfs/gwo.hpp"
#include "mfs/kernels.hpp"
#include "mfs/lssvr.hpp"

using namespace mfs;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn, int reps) {
  // one warmup, then best of reps
  fn();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

CoSvrHyperparams sample_hp(Index dim) {
  CoSvrHyperparams hp;
  hp.rho = 0.7;
  hp.sigma_l = 1.3;
  hp.sigma_d = 0.4;
  hp.theta_l = Vector::Constant(dim, 2.0);
  hp.theta_d = Vector::Constant(dim, 5.0);
  hp.gamma = 1e4;
  return hp;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const Index dim = 4;
  const CoSvrHyperparams hp = sample_hp(dim);

  for (Index n : {400, 800, 1600}) {
    const Matrix x_lf = uniform_sample(n, dim, 11);
    const Matrix x_hf = uniform_sample(n / 4, dim, 12);
    char label[64];
    std::snprintf(label, sizeof label, "assemble_mfs_kernel n=%ld+%ld",
                  static_cast<long>(n), static_cast<long>(n / 4));
    const double ts = time_ms(
        [&] { assemble_mfs_kernel(x_lf, x_hf, hp, Exec::Serial); }, 3);
    const double tp = time_ms(
        [&] { assemble_mfs_kernel(x_lf, x_hf, hp, Exec::Parallel); }, 3);
    report(label, ts, tp);
  }

  {
    const DomainBox box = DomainBox::cube(dim, 0.0, 1.0);
    const Matrix x_lf = scale(uniform_sample(200, dim, 21), box);
    const Matrix x_hf = scale(uniform_sample(50, dim, 22), box);
    Vector y_lf(200), y_hf(50);
    for (Index i = 0; i < 200; ++i)
      y_lf[i] = park2_lf(x_lf.row(i).transpose(), 0.3);
    for (Index i = 0; i < 50; ++i) y_hf[i] = park2_hf(x_hf.row(i).transpose());
    MultiFidelityData data(SampleSet(x_lf, y_lf, box), SampleSet(x_hf, y_hf, box));
    const CoSvrModel model = train_cosvr(data, hp);
    const Matrix queries = scale(uniform_sample(20000, dim, 23), box);
    const double ts = time_ms(
        [&] { predict_cosvr_batch(model, queries, Exec::Serial); }, 3);
    const double tp = time_ms(
        [&] { predict_cosvr_batch(model, queries, Exec::Parallel); }, 3);
    report("predict_cosvr_batch 20k queries", ts, tp);

    GwoConfig cfg;
    cfg.population = 16;
    cfg.iterations = 40;
    cfg.seed = 99;
    auto fit_with = [&](Exec exec) {
      cfg.exec = exec;
      fit_cosvr(data, default_cosvr_search(dim), cfg, 1e4);
    };
    const double fs = time_ms([&] { fit_with(Exec::Serial); }, 2);
    const double fp = time_ms([&] { fit_with(Exec::Parallel); }, 2);
    report("fit_cosvr 250 samples, 656 evals", fs, fp);
  }

  {
    const DomainBox box = DomainBox::cube(2, 0.0, 1.0);
    const Matrix pts = scale(uniform_sample(300, 2, 31), box);
    Vector y(300);
    for (Index i = 0; i < 300; ++i)
      y[i] = std::sin(5.0 * pts(i, 0)) + pts(i, 1) * pts(i, 1);
    SampleSet data(pts, y, box);
    KernelParams kp;
    kp.sigma = 1.0;
    kp.theta = Vector::Constant(2, 8.0);
    const LssvrModel model = train_lssvr(data, kp, 1e3);
    const Matrix queries = scale(uniform_sample(50000, 2, 32), box);
    const double ts = time_ms(
        [&] { predict_lssvr_batch(model, queries, Exec::Serial); }, 3);
    const double tp = time_ms(
        [&] { predict_lssvr_batch(model, queries, Exec::Parallel); }, 3);
    report("predict_lssvr_batch 50k queries", ts, tp);
  }

  return 0;
}
