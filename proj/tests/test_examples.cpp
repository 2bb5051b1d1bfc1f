#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "equiosc/examples.hpp"

using namespace equiosc;
using Catch::Approx;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("closed-form sum of translates", "[examples]") {
  CHECK(identity23(1.0, 0.5, 0.5) == Approx(-kLog2).margin(1e-14));
  CHECK(identity23(1.5, 1.0 / 3.0, 0.0) == Approx(-2.0 * kLog2).margin(1e-13));
  // t at a node kills a root factor
  const double x = 1.1, z = 0.4;
  CHECK(identity23(x, z, (x - z) / 2.0) == kNegInf);
}

TEST_CASE("beta0 constant", "[examples]") {
  CHECK(beta0() == Approx(0.6081734479693928).margin(1e-12));
  CHECK(std::cos(kPi * beta0()) == Approx(-1.0 / 3.0).margin(1e-15));
  CHECK(1.0 + beta0() == Approx(1.608).margin(1e-3));
}

TEST_CASE("equioscillating gap per node sum", "[examples]") {
  CHECK(equi_z_of_x(1.5).z == Approx(1.0 / 3.0).margin(1e-12));
  CHECK(equi_z_of_x(1.0).z == Approx(0.5).margin(1e-12));
  CHECK(equi_z_of_x(1.2).z == Approx(0.4695577252211962).margin(1e-12));
  CHECK(equi_z_of_x(1.5).branch == Example71Branch::kHigh);
  CHECK(equi_z_of_x(1.2).branch == Example71Branch::kMid);
  CHECK(equi_z_of_x(0.8).branch == Example71Branch::kLow);
  // low branch satisfies its own formula
  const double x = 0.8;
  CHECK(std::cos(kPi * equi_z_of_x(x).z) ==
        Approx((std::cos(kPi * (1.0 - x)) - 1.0) / 2.0).margin(1e-12));
  CHECK_THROWS_AS(equi_z_of_x(beta0() - 1e-3), std::domain_error);
  CHECK_THROWS_AS(equi_z_of_x(1.0 + beta0() + 1e-3), std::domain_error);
  CHECK_THROWS_AS(equi_z_of_x(0.3), std::domain_error);
}

TEST_CASE("equioscillation value per node sum", "[examples]") {
  CHECK(equi_value_of_x(1.5) == Approx(-2.0 * kLog2).margin(1e-14));
  CHECK(equi_value_of_x(1.0) == Approx(-kLog2).margin(1e-14));
  CHECK(equi_value_of_x(1.2) == Approx(-0.7935107604031822).margin(1e-12));
  // both branch formulas meet at the joint
  const double left = -2.0 * kLog2 + std::log(1.0 - std::cos(kPi * 1.5));
  const double right = -2.0 * kLog2 + std::log(1.0 + std::cos(kPi * 1.5));
  CHECK(left == Approx(right).margin(1e-12));
}

TEST_CASE("closed forms agree with numeric arc maxima", "[examples]") {
  const Problem p = example71_problem();
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = beta0() + 1e-6 + (1.0 - 2e-6) * u01(rng);
    const Example71Config c = equi_z_of_x(x);
    const ArcMaxima m = arc_maxima(p, c.nodes());
    INFO("x = " << x);
    CHECK(std::fabs(m.values[0] - m.values[1]) <= 1e-9);
    CHECK(m.max() == Approx(equi_value_of_x(x)).margin(1e-9));
  }
}

TEST_CASE("value curve has its extremes at the known node sums", "[examples]") {
  double best_min = 1e9, best_min_x = 0, best_max = -1e9, best_max_x = 0;
  const double lo = beta0(), hi = 1.0 + beta0();
  for (int k = 0; k <= 1000; ++k) {
    const double x = lo + (hi - lo) * k / 1000;
    const double v = equi_value_of_x(x);
    if (v < best_min) { best_min = v; best_min_x = x; }
    if (v > best_max) { best_max = v; best_max_x = x; }
  }
  CHECK(best_min_x == Approx(1.5).margin(2e-3));
  CHECK(best_max_x == Approx(1.0).margin(2e-3));
  // the curve is V-shaped at its minimum, so the grid min sits above the
  // true value by up to slope * spacing; the maximum is smooth
  CHECK(best_min == Approx(-2.0 * kLog2).margin(5e-3));
  CHECK(best_min >= -2.0 * kLog2);
  CHECK(best_max == Approx(-kLog2).margin(1e-5));
}

TEST_CASE("continuous-field reproduction", "[examples]") {
  const Report rep = reproduce_example72(4.0 * kPi + 1.0);
  for (const auto& e : rep.entries) {
    INFO(e.name << " measured=" << e.measured << " expected=" << e.expected);
    CHECK(e.pass);
  }
}

TEST_CASE("nonsingular counterexample reproduction", "[examples]") {
  const Report rep = reproduce_example54(100);
  for (const auto& e : rep.entries) {
    INFO(e.name << " measured=" << e.measured);
    CHECK(e.pass);
  }
  CHECK_THROWS_AS(reproduce_example54(3), std::invalid_argument);
}

TEST_CASE("full reproduction report", "[examples][slow]") {
  SolveConfig cfg;
  const Report rep = reproduce_example71(cfg);
  for (const auto& e : rep.entries) {
    INFO(e.name << " measured=" << e.measured << " expected=" << e.expected << " tol=" << e.tol);
    CHECK(e.pass);
  }
  CHECK(rep.sweep.size() == 100);
  CHECK_FALSE(rep.notes.empty());
}
