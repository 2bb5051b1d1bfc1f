#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "equiosc/torus.hpp"
#include "equiosc/util.hpp"

namespace equiosc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// A concave kernel on [-1,1] with extended-real values. Evaluation outside
/// the closed domain is a caller error; torus evaluation goes through
/// eval_translate and only ever produces arguments in (-1, 1).
struct Kernel {
  std::function<double(double)> eval;
  bool singular = false;          // K(0) = -inf
  bool strictly_concave = false;  // on (-1,0) and (0,1)
  bool periodic = false;          // K(t-1) = K(t)
  std::string name;
  double sup_bound = 0.0;         // finite upper bound on K

  double operator()(double t) const { return eval(t); }
};

/// The log-trigonometric kernel log|sin(pi t)|: periodic, singular,
/// strictly concave, sup K = K(1/2) = 0.
inline Kernel log_sine() {
  Kernel k;
  k.eval = [](double t) {
    if (t == 0.0 || t == 1.0 || t == -1.0) return kNegInf;
    return std::log(std::fabs(std::sin(kPi * t)));
  };
  k.singular = true;
  k.strictly_concave = true;
  k.periodic = true;
  k.name = "log_sine";
  k.sup_bound = 0.0;
  return k;
}

/// The constant-zero kernel: periodic, nonsingular, not strictly concave.
inline Kernel zero_kernel() {
  Kernel k;
  k.eval = [](double) { return 0.0; };
  k.singular = false;
  k.strictly_concave = false;
  k.periodic = true;
  k.name = "zero";
  k.sup_bound = 0.0;
  return k;
}

/// One translated term K(t - node) with the difference lifted to (-1, 1).
/// Only periodic kernels are admissible on the torus.
inline double eval_translate(const Kernel& k, TorusPoint t, TorusPoint node) {
  if (!k.periodic) throw std::invalid_argument("eval_translate: kernel must be periodic for torus evaluation");
  return k.eval(t.value() - node.value());
}

enum class SmoothMode { kUpper, kLower };

/// Smoothing family: Upper adds eta*|sin(pi t)| (>= K), Lower adds
/// eta*(|sin(pi t)| - 1) (<= K). Either way the result is strictly concave
/// and keeps the base kernel's periodicity and singularity.
inline Kernel smooth(const Kernel& base, double eta, SmoothMode mode) {
  if (!(eta > 0.0)) throw std::invalid_argument("smooth: eta must be positive");
  if (!base.periodic) throw std::invalid_argument("smooth: base kernel must be periodic");
  Kernel k;
  k.eval = [f = base.eval, eta, mode](double t) {
    const double s = std::fabs(std::sin(kPi * t));
    const double bump = (mode == SmoothMode::kUpper) ? eta * s : eta * (s - 1.0);
    return ext_add(f(t), bump);
  };
  k.singular = base.singular;
  k.strictly_concave = true;
  k.periodic = true;
  k.name = base.name + (mode == SmoothMode::kUpper ? "+eta|sin|" : "+eta(|sin|-1)");
  k.sup_bound = base.sup_bound + (mode == SmoothMode::kUpper ? eta : 0.0);
  return k;
}

/// Sampled check of periodized c-monotonicity: K'(t) - K'(t-1) >= c a.e.
/// Central differences with h = 1e-6; advisory tolerance 1e-4. Sample
/// points where either derivative is not finite are skipped.
inline bool check_pm(const Kernel& k, double c, int grid = 10000) {
  if (k.periodic && c <= 0.0) return true;  // periodicity implies (PM_0)
  const double h = 1e-6;
  const double tol = 1e-4;
  for (int i = 0; i < grid; ++i) {
    const double t = (i + 0.5) / grid;
    if (t - h <= 0.0 || t + h >= 1.0) continue;
    const double k1a = k.eval(t - h), k1b = k.eval(t + h);
    const double k0a = k.eval(t - 1.0 - h), k0b = k.eval(t - 1.0 + h);
    if (!std::isfinite(k1a) || !std::isfinite(k1b) || !std::isfinite(k0a) || !std::isfinite(k0b)) continue;
    const double d1 = (k1b - k1a) / (2.0 * h);
    const double d0 = (k0b - k0a) / (2.0 * h);
    if (d1 - d0 < c - tol) return false;
  }
  return true;
}

}  // namespace equiosc
