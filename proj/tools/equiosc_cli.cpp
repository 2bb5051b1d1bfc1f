// Command-line front end: solve | equi | trace-mu | oracle | reproduce |
// check-perturbation. Structured results go to JSON (file or stdout),
// plottable curves to CSV. Exit codes: 0 success, 1 failed assertions in
// reproduce/check-perturbation, 2 usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "equiosc/examples.hpp"
#include "equiosc/perturb.hpp"
#include "equiosc/problem_io.hpp"
#include "equiosc/solvers.hpp"

namespace {

using namespace equiosc;

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  write_text(doc.dump(2) + "\n", path);
}

struct CommonOpts {
  std::string problem_path;
  std::string out_path;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> grid;

  void apply(SolveConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (tol) cfg.tol_value = *tol;
    if (grid) cfg.grid_resolution = *grid;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_problem = true) {
  if (with_problem) cmd->add_option("--problem", o.problem_path, "problem file (JSON)")->required();
  cmd->add_option("--out", o.out_path, "write JSON result to this path (default: stdout)");
  cmd->add_option("--seed", o.seed, "override the RNG seed");
  cmd->add_option("--tol", o.tol, "override the value tolerance");
  cmd->add_option("--grid", o.grid, "override the grid resolution");
}

int run_solve(const CommonOpts& o, const std::string& mode, std::optional<double> anchor) {
  ParsedProblem parsed = parse_problem_file(o.problem_path);
  o.apply(parsed.config);
  SolveResult result = [&] {
    if (mode == "minimax") return solve_minimax(parsed.problem, parsed.config);
    if (mode == "maximin") return solve_maximin(parsed.problem, parsed.config);
    return solve_equioscillation(parsed.problem, TorusPoint(*anchor), parsed.config);
  }();
  std::cerr << "solved in " << result.wall_time_s << " s, " << result.iterations << " iterations\n";
  nlohmann::json doc = solve_result_to_json(result, parsed.config);
  doc["mode"] = mode;
  if (anchor) doc["anchor"] = *anchor;
  write_json(doc, o.out_path);
  if (!o.csv_path.empty()) write_text(arc_maxima_to_csv(result.maxima), o.csv_path);
  return 0;
}

int run_trace_mu(const CommonOpts& o, int grid) {
  ParsedProblem parsed = parse_problem_file(o.problem_path);
  o.apply(parsed.config);
  std::vector<TorusPoint> anchors;
  anchors.reserve(grid);
  for (int i = 0; i < grid; ++i) anchors.emplace_back(static_cast<double>(i) / grid);
  const auto trace = trace_mu(parsed.problem, anchors, parsed.config);
  write_json(mu_trace_to_json(trace, parsed.config), o.out_path);
  if (!o.csv_path.empty()) write_text(mu_trace_to_csv(trace), o.csv_path);
  return 0;
}

int run_oracle(const CommonOpts& o) {
  ParsedProblem parsed = parse_problem_file(o.problem_path);
  o.apply(parsed.config);
  const OracleResult r = brute_force(parsed.problem, parsed.config.grid_resolution, parsed.config);
  write_json(oracle_to_json(r, parsed.config), o.out_path);
  return 0;
}

int run_reproduce(const CommonOpts& o, const std::string& which, double alpha, int lmax) {
  SolveConfig cfg;
  o.apply(cfg);
  Report rep;
  if (which == "example71") {
    rep = reproduce_example71(cfg);
  } else if (which == "example72") {
    rep = reproduce_example72(alpha, cfg);
  } else if (which == "example54") {
    rep = reproduce_example54(lmax, cfg);
  } else {
    std::cerr << "unknown reproduction target '" << which << "'\n";
    return 2;
  }
  write_json(report_to_json(rep, cfg), o.out_path);
  if (!o.csv_path.empty() && !rep.sweep.empty()) write_text(sweep_to_csv(rep), o.csv_path);
  for (const auto& e : rep.entries) {
    std::cerr << (e.pass ? "[PASS] " : "[FAIL] ") << rep.title << "." << e.name << "\n";
  }
  return rep.passed() ? 0 : 1;
}

int run_check_perturbation(const CommonOpts& o, int trials) {
  ParsedProblem parsed = parse_problem_file(o.problem_path);
  o.apply(parsed.config);
  const Problem& p = parsed.problem;
  if (p.n < 2) {
    std::cerr << "check-perturbation needs n >= 2\n";
    return 2;
  }
  std::mt19937_64 rng(parsed.config.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PerturbReport total;
  int done = 0;
  while (done < trials) {
    std::vector<double> vals(p.n);
    for (double& v : vals) v = u01(rng);
    std::sort(vals.begin(), vals.end());
    bool spaced = vals.front() + 1.0 - vals.back() > 1e-3;
    for (int i = 0; i + 1 < p.n && spaced; ++i) spaced = vals[i + 1] - vals[i] > 1e-3;
    if (!spaced) continue;
    Partition part;
    part.shrink.resize(p.n);
    for (int i = 0; i < p.n; ++i) part.shrink[i] = u01(rng) < 0.5;
    const auto in_i = std::count(part.shrink.begin(), part.shrink.end(), true);
    if (in_i == 0 || in_i == p.n) continue;
    std::vector<TorusPoint> pts;
    for (double v : vals) pts.emplace_back(v);
    const NodeSystem w(std::move(pts));
    const double h = default_perturbation_h(w, p.nu);
    const NodeSystem wp = perturb_general(p.nu, w, part, h);
    const PerturbReport rep = verify_perturbation(p, w, wp, part, 16, parsed.config.seed + done);
    total.containment_violations += rep.containment_violations;
    total.pointwise_checked += rep.pointwise_checked;
    total.pointwise_violations += rep.pointwise_violations;
    total.max_violations += rep.max_violations;
    total.strict_checked += rep.strict_checked;
    total.strict_failures += rep.strict_failures;
    ++done;
  }
  write_json(perturb_report_to_json(total, trials, parsed.config), o.out_path);
  return total.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted minimax/maximin and equioscillation on the torus"};
  app.require_subcommand(1);

  CommonOpts solve_opts;
  std::string solve_mode = "minimax";
  std::optional<double> solve_anchor;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve minimax, maximin or an anchored equioscillation");
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_option("--mode", solve_mode, "minimax | maximin | equi")
      ->check(CLI::IsMember({"minimax", "maximin", "equi"}));
  solve_cmd->add_option("--anchor", solve_anchor, "anchor position for --mode equi");
  solve_cmd->add_option("--csv", solve_opts.csv_path, "write arc maxima rows (j, m_j, t_j, attained) as CSV");

  CommonOpts equi_opts;
  double equi_anchor = 0.0;
  CLI::App* equi_cmd = app.add_subcommand("equi", "anchored equioscillation solve");
  add_common(equi_cmd, equi_opts);
  equi_cmd->add_option("--anchor", equi_anchor, "anchor position (node 1)")->required();
  equi_cmd->add_option("--csv", equi_opts.csv_path, "write arc maxima rows (j, m_j, t_j, attained) as CSV");

  CommonOpts mu_opts;
  int mu_grid = 64;
  CLI::App* mu_cmd = app.add_subcommand("trace-mu", "equioscillation value over a grid of anchors");
  add_common(mu_cmd, mu_opts);
  mu_cmd->add_option("--csv", mu_opts.csv_path, "write the (a, mu, nodes) curve as CSV");
  mu_cmd->add_option("--anchors", mu_grid, "number of anchor grid points")->check(CLI::PositiveNumber);

  CommonOpts oracle_opts;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive grid search cross-check");
  add_common(oracle_cmd, oracle_opts);

  CommonOpts rep_opts;
  std::string rep_which;
  double rep_alpha = 4.0 * kPi + 1.0;
  int rep_lmax = 100;
  CLI::App* rep_cmd = app.add_subcommand("reproduce", "run a bundled example scenario end to end");
  rep_cmd->add_option("which", rep_which, "example71 | example72 | example54")->required();
  add_common(rep_cmd, rep_opts, /*with_problem=*/false);
  rep_cmd->add_option("--csv", rep_opts.csv_path, "write the value sweep as CSV");
  rep_cmd->add_option("--alpha", rep_alpha, "tent field slope for example72");
  rep_cmd->add_option("--lmax", rep_lmax, "truncation for example54");

  CommonOpts chk_opts;
  int chk_trials = 100;
  CLI::App* chk_cmd = app.add_subcommand("check-perturbation", "randomized perturbation lemma checks");
  add_common(chk_cmd, chk_opts);
  chk_cmd->add_option("--trials", chk_trials, "number of random trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) {
      if (solve_mode == "equi" && !solve_anchor) {
        std::cerr << "--mode equi requires --anchor\n";
        return 2;
      }
      return run_solve(solve_opts, solve_mode, solve_anchor);
    }
    if (equi_cmd->parsed()) return run_solve(equi_opts, "equi", equi_anchor);
    if (mu_cmd->parsed()) return run_trace_mu(mu_opts, mu_grid);
    if (oracle_cmd->parsed()) return run_oracle(oracle_opts);
    if (rep_cmd->parsed()) return run_reproduce(rep_opts, rep_which, rep_alpha, rep_lmax);
    if (chk_cmd->parsed()) return run_check_perturbation(chk_opts, chk_trials);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
