#include "mfs/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mfs {

namespace {

void require_dim(const Vector& x, Index s, const char* name) {
  if (x.size() != s)
    throw DimensionError(std::string(name) + ": expected " + std::to_string(s) +
                         "-D point, got " + std::to_string(x.size()) + "-D");
}

double currin_hf_xy(double x1, double x2) {
  if (x2 == 0.0)
    throw DomainEvalError("currin_hf: singular factor exp(-1/(2 x2)) at x2 = 0");
  const double factor = 1.0 - std::exp(-1.0 / (2.0 * x2));
  const double num = 2000.0 * x1 * x1 * x1 + 1900.0 * x1 * x1 + 2092.0 * x1 + 60.0;
  const double den = 100.0 * x1 * x1 * x1 + 500.0 * x1 * x1 + 4.0 * x1 + 20.0;
  return factor * num / den;
}

}  // namespace

bool BenchmarkFamily::is_valid(const Vector& x) const {
  try {
    (void)hf(x);
    (void)lf(x, 0.0);
  } catch (const DomainEvalError&) {
    return false;
  }
  return true;
}

double currin_hf(const Vector& x) {
  require_dim(x, 2, "currin_hf");
  return currin_hf_xy(x[0], x[1]);
}

double currin_lf(const Vector& x, double m) {
  require_dim(x, 2, "currin_lf");
  const double x1 = x[0], x2 = x[1];
  const double lo2 = std::max(0.0, x2 - 0.05);
  const double shifted = currin_hf_xy(x1 + 0.05, x2 + 0.05);
  const double rest = currin_hf_xy(x1 + 0.05, lo2) +
                      currin_hf_xy(x1 - 0.05, x2 + 0.05) +
                      currin_hf_xy(x1 - 0.05, lo2);
  return (1.0 - m * m - 2.0 * m) * shifted + 0.25 * rest;
}

double park1_hf(const Vector& x) {
  require_dim(x, 4, "park1_hf");
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  if (x1 == 0.0) throw DomainEvalError("park1_hf: singular at x1 = 0");
  const double arg = 1.0 + (x2 + x3 * x3) * x4 / (x1 * x1);
  if (arg < 0.0)
    throw DomainEvalError("park1_hf: negative square-root argument");
  return x1 / 2.0 * (std::sqrt(arg) - 1.0) +
         (x1 + 3.0 * x4) * std::exp(1.0 + std::sin(x3));
}

double park1_lf(const Vector& x, double m) {
  require_dim(x, 4, "park1_lf");
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  return (1.0 - m * m - 2.0 * m) * (1.0 + std::sin(x1) / 10.0) * park1_hf(x) -
         2.0 * x1 + x2 * x2 + x3 * x3 + 0.5;
}

double park2_hf(const Vector& x) {
  require_dim(x, 4, "park2_hf");
  return 2.0 / 3.0 * std::exp(x[0] + x[1]) - x[3] * std::sin(x[2]) + x[2];
}

double park2_lf(const Vector& x, double m) {
  require_dim(x, 4, "park2_lf");
  return 1.2 * park2_hf(x) -
         (0.5 * m * m + m + 0.5) * (2.0 / 3.0) * std::exp(x[0] + x[1]);
}

namespace {

std::map<std::string, BenchmarkFamily> build_registry() {
  std::map<std::string, BenchmarkFamily> reg;
  auto add = [&reg](const std::string& name, Index dim, DomainBox box,
                    std::function<double(const Vector&)> hf,
                    std::function<double(const Vector&, double)> lf) {
    reg[name] = BenchmarkFamily{name, dim, std::move(box), std::move(hf),
                                std::move(lf)};
  };
  add("currin", 2, DomainBox::cube(2, 0.0, 0.5), currin_hf, currin_lf);
  add("currin_std", 2, DomainBox::cube(2, 0.0, 1.0), currin_hf, currin_lf);
  add("park1", 4, DomainBox::cube(4, -1.0, 0.0), park1_hf, park1_lf);
  add("park1_std", 4, DomainBox::cube(4, 0.0, 1.0), park1_hf, park1_lf);
  add("park2", 4, DomainBox::cube(4, 0.0, 1.0), park2_hf, park2_lf);
  return reg;
}

}  // namespace

const BenchmarkFamily& find_family(const std::string& name) {
  static const auto registry = build_registry();
  auto it = registry.find(name);
  if (it == registry.end())
    throw ConfigError("unknown benchmark family '" + name + "'");
  return it->second;
}

std::vector<std::string> family_names() {
  return {"currin", "currin_std", "park1", "park1_std", "park2"};
}

}  // namespace mfs
