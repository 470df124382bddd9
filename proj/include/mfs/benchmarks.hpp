#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mfs/types.hpp"

namespace mfs {

// Analytic HF/LF test-function pair with its evaluation domain. The LF model
// takes the correlation knob m in [0,1]. Evaluators throw DomainEvalError at
// singular points; is_valid reports whether both fidelities evaluate cleanly
// at x (used for rejection resampling in the experiment runner).
struct BenchmarkFamily {
  std::string name;
  Index dimension = 0;
  DomainBox domain;
  std::function<double(const Vector&)> hf;
  std::function<double(const Vector&, double)> lf;

  bool is_valid(const Vector& x) const;
};

// Currin family, 2-D. The HF model has a singular factor at x2 = 0; the
// shifted LF evaluations clamp x2 - 0.05 at zero, so LF is undefined for
// x2 <= 0.05.
double currin_hf(const Vector& x);
double currin_lf(const Vector& x, double m);

// Park family 1, 4-D. Singular at x1 = 0 and where the square-root argument
// 1 + (x2 + x3^2) x4 / x1^2 turns negative.
double park1_hf(const Vector& x);
double park1_lf(const Vector& x, double m);

// Park family 2, 4-D, total on [0,1]^4.
double park2_hf(const Vector& x);
double park2_lf(const Vector& x, double m);

// Families addressable by name: "currin", "park1", "park2" carry the domains
// declared alongside the function definitions ([0,0.5]^2, [-1,0]^4, [0,1]^4).
// "currin_std" and "park1_std" are the same functions on the classical
// domains [0,1]^2 and [0,1]^4, where the singular sets do not intersect the
// interior; see README for when to prefer them.
const BenchmarkFamily& find_family(const std::string& name);
std::vector<std::string> family_names();

}  // namespace mfs
