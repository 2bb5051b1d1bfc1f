#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "equiosc/torus.hpp"

using namespace equiosc;
using Catch::Approx;

TEST_CASE("wrap maps reals into [0,1)", "[torus]") {
  CHECK(wrap(1.75).value() == Approx(0.75).margin(1e-15));
  CHECK(wrap(-0.25).value() == Approx(0.75).margin(1e-15));
  CHECK(wrap(0.0).value() == 0.0);
  CHECK(wrap(1.0).value() == 0.0);
  CHECK(wrap(-1.0).value() == 0.0);
  CHECK(wrap(-1e-20).value() == 0.0);  // rounding at the seam collapses to 0
  CHECK_THROWS_AS(wrap(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(wrap(std::nan("")), std::invalid_argument);
}

TEST_CASE("torus distance", "[torus]") {
  CHECK(dist(wrap(0.1), wrap(0.9)) == Approx(0.2).margin(1e-15));
  CHECK(dist(wrap(0.3), wrap(0.3)) == 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    TorusPoint a(u(rng)), b(u(rng));
    const double d = dist(a, b);
    CHECK(d >= 0.0);
    CHECK(d <= 0.5);
    CHECK(d == dist(b, a));
  }
}

TEST_CASE("cut lift and project", "[torus]") {
  CHECK(cut_lift(wrap(0.3), wrap(0.5)) == Approx(0.2).margin(1e-15));
  CHECK(cut_lift(wrap(0.3), wrap(0.1)) == Approx(0.8).margin(1e-15));
  CHECK(cut_lift(wrap(0.0), wrap(0.7)) == Approx(0.7).margin(1e-15));
  CHECK(cut_project(wrap(0.3), 0.2).value() == Approx(0.5).margin(1e-15));
  CHECK(cut_project(wrap(0.3), 0.8).value() == Approx(0.1).margin(1e-15));
  CHECK(cut_project(wrap(0.5), 0.5).value() == 0.0);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    TorusPoint c(u(rng)), y(u(rng));
    const TorusPoint back = cut_project(c, cut_lift(c, y));
    CHECK(dist(back, y) <= 1e-15);  // round trip, 1-ulp class
  }
}

TEST_CASE("cyclic order classification", "[torus]") {
  auto mk = [](std::initializer_list<double> vs) {
    std::vector<TorusPoint> pts;
    for (double v : vs) pts.emplace_back(v);
    return pts;
  };
  CHECK(cyclic_order(mk({0.9, 0.1, 0.4})).ordered);
  CHECK(cyclic_order(mk({0.9, 0.1, 0.4})).strict);
  CHECK_FALSE(cyclic_order(mk({0.1, 0.4, 0.2})).ordered);
  CHECK(cyclic_order(mk({0.2, 0.2, 0.7})).ordered);
  CHECK_FALSE(cyclic_order(mk({0.2, 0.2, 0.7})).strict);
  CHECK(cyclic_order(mk({0.5})).ordered);
  CHECK(cyclic_order(mk({0.5})).strict);
  CHECK(cyclic_order(mk({0.3, 0.3})).ordered);
  CHECK_FALSE(cyclic_order(mk({0.3, 0.3})).strict);
  // any pair is cyclically ordered
  CHECK(cyclic_order(mk({0.8, 0.2})).ordered);
  CHECK_THROWS_AS(cyclic_order({}), std::invalid_argument);
}

TEST_CASE("arcs of a node system", "[torus]") {
  auto mk = [](std::initializer_list<double> vs) {
    std::vector<TorusPoint> pts;
    for (double v : vs) pts.emplace_back(v);
    return pts;
  };
  SECTION("two half arcs") {
    auto arcs = arcs_of(mk({0.25, 0.75}));
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0].length() == Approx(0.5).margin(1e-15));
    CHECK(arcs[1].length() == Approx(0.5).margin(1e-15));
    CHECK(arcs[0].start().value() == 0.25);
    CHECK(arcs[1].start().value() == 0.75);
  }
  SECTION("single node spans the circle") {
    auto arcs = arcs_of(mk({0.0}));
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].length() == 1.0);
    CHECK(arcs[0].contains(wrap(0.37)));
  }
  SECTION("repeated node gives a degenerate and a full arc") {
    auto arcs = arcs_of(mk({0.2, 0.2}));
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0].length() == 0.0);
    CHECK(arcs[1].length() == 1.0);
  }
  SECTION("unordered input rejected") {
    CHECK_THROWS_AS(arcs_of(mk({0.1, 0.4, 0.2})), std::invalid_argument);
  }
  SECTION("lengths sum to one") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(u(rng) * 6);
      std::vector<double> vals(n);
      for (auto& v : vals) v = u(rng);
      std::sort(vals.begin(), vals.end());
      std::vector<TorusPoint> pts;
      const int rot = static_cast<int>(u(rng) * n);
      for (int j = 0; j < n; ++j) pts.emplace_back(vals[(j + rot) % n]);
      auto arcs = arcs_of(pts);
      double total = 0.0;
      for (const auto& a : arcs) total += a.length();
      CHECK(total == Approx(1.0).margin(1e-12));
    }
  }
  SECTION("arc structure is independent of where the listing starts") {
    auto base = mk({0.15, 0.4, 0.83});
    auto arcs0 = arcs_of(base);
    for (int rot = 1; rot < 3; ++rot) {
      std::vector<TorusPoint> rotated;
      for (int j = 0; j < 3; ++j) rotated.push_back(base[(j + rot) % 3]);
      auto arcs = arcs_of(rotated);
      for (int j = 0; j < 3; ++j) {
        CHECK(arcs[j].start() == arcs0[(j + rot) % 3].start());
        CHECK(arcs[j].length() == Approx(arcs0[(j + rot) % 3].length()).margin(1e-12));
      }
    }
  }
}

TEST_CASE("arc membership", "[torus]") {
  Arc a(wrap(0.75), 0.5);  // wraps through 0
  CHECK(a.contains(a.start()));
  CHECK(a.contains(a.end()));
  CHECK(a.contains(wrap(0.0)));
  CHECK(a.contains(wrap(0.1)));
  CHECK_FALSE(a.contains(wrap(0.5)));
  Arc degenerate(wrap(0.3), 0.0);
  CHECK(degenerate.contains(wrap(0.3)));
  CHECK_FALSE(degenerate.contains(wrap(0.30001)));
  CHECK_THROWS_AS(Arc(wrap(0.1), 1.5), std::invalid_argument);
}
