#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "equiosc/kernels.hpp"

using namespace equiosc;
using Catch::Approx;

TEST_CASE("log-sine kernel values and flags", "[kernels]") {
  const Kernel k = log_sine();
  CHECK(k.eval(0.5) == 0.0);
  CHECK(k.eval(0.25) == Approx(-0.3465735902799726).margin(1e-14));
  CHECK(k.eval(0.0) == kNegInf);
  CHECK(k.eval(1.0) == kNegInf);
  CHECK(k.eval(-1.0) == kNegInf);
  CHECK(k.singular);
  CHECK(k.strictly_concave);
  CHECK(k.periodic);
  CHECK(k.sup_bound == 0.0);
}

TEST_CASE("log-sine is periodic and even", "[kernels]") {
  const Kernel k = log_sine();
  for (int i = 1; i < 64; ++i) {
    const double t = i / 64.0;
    CHECK(k.eval(t) == Approx(k.eval(t - 1.0)).margin(1e-12));
    CHECK(k.eval(t) == Approx(k.eval(-t)).margin(1e-12));
  }
}

TEST_CASE("zero kernel", "[kernels]") {
  const Kernel k = zero_kernel();
  CHECK(k.eval(0.3) == 0.0);
  CHECK(k.eval(0.0) == 0.0);
  CHECK_FALSE(k.singular);
  CHECK_FALSE(k.strictly_concave);
  CHECK(k.periodic);
}

TEST_CASE("translate evaluation on the torus", "[kernels]") {
  const Kernel ls = log_sine();
  CHECK(eval_translate(ls, wrap(0.75), wrap(0.25)) == Approx(0.0).margin(1e-15));
  CHECK(eval_translate(ls, wrap(0.4), wrap(0.4)) == kNegInf);
  CHECK(eval_translate(zero_kernel(), wrap(0.9), wrap(0.1)) == 0.0);

  Kernel aperiodic;
  aperiodic.eval = [](double t) { return -t * t; };
  aperiodic.periodic = false;
  CHECK_THROWS_AS(eval_translate(aperiodic, wrap(0.5), wrap(0.25)), std::invalid_argument);
}

TEST_CASE("smoothing families", "[kernels]") {
  const Kernel base = log_sine();
  const Kernel up = smooth(base, 0.1, SmoothMode::kUpper);
  const Kernel lo = smooth(base, 0.1, SmoothMode::kLower);
  CHECK(up.eval(0.5) == Approx(0.1).margin(1e-15));
  CHECK(lo.eval(0.5) == Approx(0.0).margin(1e-15));
  CHECK(up.eval(0.0) == kNegInf);  // eta*|sin 0| adds nothing at the singularity
  CHECK(up.singular);
  CHECK(up.strictly_concave);
  CHECK(up.periodic);
  CHECK_THROWS_AS(smooth(base, 0.0, SmoothMode::kUpper), std::invalid_argument);
  CHECK_THROWS_AS(smooth(base, -1.0, SmoothMode::kLower), std::invalid_argument);

  // Upper >= base >= Lower, both within eta of the base.
  for (int i = 1; i < 200; ++i) {
    const double t = i / 200.0;
    const double b = base.eval(t);
    CHECK(up.eval(t) >= b);
    CHECK(lo.eval(t) <= b);
    CHECK(up.eval(t) - b <= 0.1 + 1e-15);
    CHECK(b - lo.eval(t) <= 0.1 + 1e-15);
  }
}

TEST_CASE("sampled concavity", "[kernels]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Kernel& k : {log_sine(), zero_kernel(), smooth(log_sine(), 0.05, SmoothMode::kUpper)}) {
    for (int i = 0; i < 1000; ++i) {
      const double t = 0.02 + 0.96 * u(rng);
      const double h = 1e-4 + u(rng) * std::min({t - 0.01, 0.99 - t, 0.2});
      const double mid = k.eval(t);
      const double avg = 0.5 * (k.eval(t - h) + k.eval(t + h));
      CHECK(mid >= avg - 1e-9);
    }
  }
}

TEST_CASE("periodized monotonicity check", "[kernels]") {
  CHECK(check_pm(log_sine(), 0.0));
  CHECK(check_pm(zero_kernel(), 0.0));
  CHECK_FALSE(check_pm(log_sine(), 100.0, 10000));
}
