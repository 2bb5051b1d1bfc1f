// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "equiosc/examples.hpp"
#include "equiosc/perturb.hpp"
#include "equiosc/solvers.hpp"

using namespace equiosc;

namespace {

const double kLog2 = std::log(2.0);
int g_failures = 0;

struct Criterion {
  std::string label;
  bool pass = true;
  std::string detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(std::string l) : label(std::move(l)) {}

  void require(bool ok, const std::string& what) {
    if (!ok && detail.empty()) detail = what;
    pass = pass && ok;
  }

  void finish(double time_budget_s = 0.0) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_budget_s > 0.0 && secs > time_budget_s) {
      pass = false;
      if (detail.empty()) detail = "over time budget";
    }
    std::printf("[%s] %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", label.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void criterion1_2_3() {
  const Problem p = example71_problem();
  SolveConfig cfg;

  Criterion c1("1. minimax of the half-circle weight problem = -2 log 2, nodes (7/12, 11/12)");
  const SolveResult mini = solve_minimax(p, cfg);
  c1.require(std::fabs(mini.value - (-2.0 * kLog2)) <= 1e-4, "value " + num(mini.value));
  c1.require(detail::nodes_match(mini.nodes, {7.0 / 12.0, 11.0 / 12.0}, 1e-4), "nodes off");
  c1.finish(10.0);

  Criterion c2("2. maximin = -log 2, nodes (1/4, 3/4), and minimax < maximin");
  const SolveResult maxi = solve_maximin(p, cfg);
  c2.require(std::fabs(maxi.value - (-kLog2)) <= 1e-4, "value " + num(maxi.value));
  c2.require(detail::nodes_match(maxi.nodes, {0.25, 0.75}, 1e-4), "nodes off");
  c2.require(mini.value < maxi.value, "headline inequality");
  c2.finish(10.0);

  Criterion c3("3. grid oracle at N=512 brackets both values within 0.02");
  const OracleResult oracle = brute_force(p, 512, cfg);
  c3.require(std::fabs(oracle.minimax_estimate - (-2.0 * kLog2)) <= 0.02,
             "minimax estimate " + num(oracle.minimax_estimate));
  c3.require(std::fabs(oracle.maximin_estimate - (-kLog2)) <= 0.02,
             "maximin estimate " + num(oracle.maximin_estimate));
  c3.require(std::fabs(mini.value - oracle.minimax_estimate) <= 0.02, "solver outside minimax bracket");
  c3.require(std::fabs(maxi.value - oracle.maximin_estimate) <= 0.02, "solver outside maximin bracket");
  c3.finish(60.0);
}

void criterion4() {
  Criterion c("4. equioscillation values fill [-2 log 2, -log 2] (100 samples, gap < 0.02)");
  const Problem p = example71_problem();
  SolveConfig cfg;
  std::vector<double> values;
  double worst_pair_gap = 0.0, worst_solve_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double lambda = -2.0 * kLog2 + kLog2 * k / 99.0;
    const double v = 1.0 - std::exp(lambda + 2.0 * kLog2);
    const double x = 2.0 - std::acos(std::min(1.0, std::max(-1.0, v))) / kPi;
    const Example71Config conf = equi_z_of_x(x);
    const ArcMaxima m = arc_maxima(p, conf.nodes(), cfg.arc());
    worst_pair_gap = std::max(worst_pair_gap, m.max() - m.min());
    values.push_back(m.max());
    const SolveResult anchored = solve_equioscillation(p, conf.y1(), cfg, conf.nodes());
    worst_solve_err = std::max(worst_solve_err, std::fabs(anchored.value - equi_value_of_x(x)));
  }
  std::sort(values.begin(), values.end());
  double gap = std::max(values.front() - (-2.0 * kLog2), -kLog2 - values.back());
  for (std::size_t i = 0; i + 1 < values.size(); ++i) gap = std::max(gap, values[i + 1] - values[i]);
  c.require(gap < 0.02, "max sampling gap " + num(gap));
  c.require(worst_pair_gap <= 1e-9, "pair equioscillation gap " + num(worst_pair_gap));
  c.require(worst_solve_err <= 1e-6, "anchored solve error " + num(worst_solve_err));
  c.finish();
}

void criterion5() {
  Criterion c("5. beta0 = 0.60817 +- 1e-5 and cos(pi beta0) = -1/3 to 1e-15");
  c.require(std::fabs(beta0() - 0.60817) <= 1e-5, "beta0 " + num(beta0()));
  c.require(std::fabs(std::cos(kPi * beta0()) + 1.0 / 3.0) <= 1e-15, "cos identity");
  c.finish();
}

void criterion6() {
  Criterion c("6. closed-form identity matches the sum of translates on 1e4 samples to 1e-12");
  const Problem p(log_sine(), {1.0, 1.0}, zero_field());
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  int accepted = 0;
  while (accepted < 10000) {
    const double x = 2.0 * u01(rng);
    const double z = u01(rng) * std::min(x, 2.0 - x);
    const double t = u01(rng);
    const NodeSystem y({TorusPoint((x - z) / 2.0), TorusPoint((x + z) / 2.0)});
    if (dist(wrap(t), y[0]) < 1e-3 || dist(wrap(t), y[1]) < 1e-3) continue;
    if (std::fabs(std::cos(kPi * z) - std::cos(kPi * (2.0 * t - x))) < 1e-2) continue;
    ++accepted;
    const double diff = std::fabs(f_eval(p, y, wrap(t)) - identity23(x, z, t));
    worst = std::max(worst, diff);
    if (diff > 1e-12) ++failures;
  }
  c.require(failures == 0, "failures " + std::to_string(failures) + ", worst " + num(worst));
  c.finish(5.0);
}

void criterion7() {
  Criterion c("7. perturbation lemma property suite: 1e3 node trials + 1e3 widening samples clean");
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const PiecewiseField fields[3] = {example71_field(), zero_field(), tilde_field(4.0 * kPi + 1.0)};

  int done = 0;
  int violations = 0, strict_failures = 0;
  while (done < 1000) {
    const int n = 2 + static_cast<int>(u01(rng) * 5);
    std::vector<double> vals(n);
    for (auto& v : vals) v = u01(rng);
    std::sort(vals.begin(), vals.end());
    bool spaced = vals.front() + 1.0 - vals.back() > 5e-3;
    for (int i = 0; i + 1 < n && spaced; ++i) spaced = vals[i + 1] - vals[i] > 5e-3;
    if (!spaced) continue;
    std::vector<double> nu(n);
    for (auto& v : nu) v = 0.5 + 1.5 * u01(rng);
    Partition part;
    part.shrink.resize(n);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      part.shrink[i] = u01(rng) < 0.5;
      count += part.shrink[i];
    }
    if (count == 0 || count == n) continue;
    std::vector<TorusPoint> pts;
    for (double v : vals) pts.emplace_back(v);
    const NodeSystem w(std::move(pts));
    const Problem prob(log_sine(), nu, fields[done % 3]);
    const double h = default_perturbation_h(w, nu);
    const NodeSystem wp = perturb_general(nu, w, part, h);
    const PerturbReport rep = verify_perturbation(prob, w, wp, part, 16, 9000 + done);
    violations += rep.containment_violations + rep.pointwise_violations + rep.max_violations;
    strict_failures += rep.strict_failures;
    ++done;
  }
  c.require(violations == 0, "lemma violations " + std::to_string(violations));
  c.require(strict_failures == 0, "strictness failures " + std::to_string(strict_failures));

  int widening_checked = 0, widening_violations = 0;
  int configs = 0;
  while (configs < 125) {
    double alpha = 0.4 * u01(rng);
    double a = alpha + 0.02 + 0.2 * u01(rng);
    double b = a + 0.02 + 0.3 * u01(rng);
    const double pw = 0.5 + 1.5 * u01(rng);
    const double qw = 0.5 + 1.5 * u01(rng);
    const double beta = b + pw * (a - alpha) / qw;
    if (beta >= 1.0 || beta <= b + 1e-3) continue;
    ++configs;
    const WideningReport rep = check_widening(log_sine(), alpha, a, b, beta, pw, qw, 8);
    widening_checked += rep.checked_outside + rep.checked_inside;
    widening_violations += rep.violations;
  }
  c.require(widening_violations == 0,
            "widening violations " + std::to_string(widening_violations) + " of " +
                std::to_string(widening_checked));
  c.finish(30.0);
}

void criterion8() {
  Criterion c("8. anchored equioscillation is unique: 20 random starts agree to 1e-8 per anchor");
  const Problem p = example71_problem();
  SolveConfig cfg;
  cfg.tol_value = 1e-10;
  std::mt19937_64 rng(4711);
  std::uniform_real_distribution<double> u01(0.02, 0.98);
  for (double a : {0.55, 7.0 / 12.0, 0.65}) {
    const TorusPoint anchor(a);
    double lo = 2.0, hi = -1.0;
    for (int s = 0; s < 20; ++s) {
      const NodeSystem warm({anchor, cut_project(anchor, u01(rng))});
      const SolveResult r = solve_equioscillation(p, anchor, cfg, warm);
      c.require(r.certificate == Certificate::kEquioscillating, "no convergence at a=" + num(a));
      lo = std::min(lo, r.nodes[1].value());
      hi = std::max(hi, r.nodes[1].value());
    }
    c.require(hi - lo <= 1e-8, "spread " + num(hi - lo) + " at a=" + num(a));
  }
  c.finish();
}

void criterion9() {
  Criterion c("9. smoothing homotopy: monotone stages, limits within 5e-3 of both values");
  const Problem p = example71_problem();
  SolveConfig cfg;
  cfg.eta_schedule = {0.1, 0.03, 0.01, 0.003, 0.001};
  const HomotopyResult mini = smoothing_homotopy(p, cfg, SolveMode::kMinimax);
  c.require(mini.monotone, "minimax stages not monotone");
  c.require(std::fabs(mini.result.value - (-2.0 * kLog2)) <= 5e-3,
            "minimax limit " + num(mini.result.value));
  const HomotopyResult maxi = smoothing_homotopy(p, cfg, SolveMode::kMaximin);
  c.require(maxi.monotone, "maximin stages not monotone");
  c.require(std::fabs(maxi.result.value - (-kLog2)) <= 5e-3, "maximin limit " + num(maxi.result.value));
  c.finish();
}

void criterion10() {
  Criterion c("10. continuous tent field keeps both equioscillating pairs (to 1e-9)");
  const Report rep = reproduce_example72(4.0 * kPi + 1.0);
  for (const auto& e : rep.entries) c.require(e.pass, e.name + " measured " + num(e.measured));
  c.finish();
}

void criterion11() {
  Criterion c("11. truncated nonsingular counterexample: constant max, no equioscillation");
  const Report rep = reproduce_example54(100);
  for (const auto& e : rep.entries) c.require(e.pass, e.name + " measured " + num(e.measured));
  c.finish();
}

}  // namespace

int main() {
  criterion1_2_3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
