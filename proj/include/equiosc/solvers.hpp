#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "equiosc/sumtrans.hpp"
#include "equiosc/util.hpp"

namespace equiosc {

enum class SolveMode { kMinimax, kMaximin };
enum class Certificate { kEquioscillating, kGapReport };

struct SolveConfig {
  int multistart = 16;
  double tol_value = 1e-8;   // equioscillation gap tolerance
  double tol_node = 1e-9;    // node coordinate tolerance / ordering margin
  int max_iters = 200;
  int grid_resolution = 512;  // oracle grid per coordinate
  std::vector<double> eta_schedule{0.1, 0.03, 0.01, 0.003, 0.001};
  std::uint64_t seed = 1;
  double tol_t = 1e-12;      // arc maximization tolerance

  ArcConfig arc() const { return {tol_t}; }

  void validate() const {
    if (multistart < 1 || max_iters < 1 || grid_resolution < 2)
      throw std::invalid_argument("config: counts must be positive");
    if (!(tol_value > 0.0) || !(tol_node > 0.0) || !(tol_t > 0.0))
      throw std::invalid_argument("config: tolerances must be positive");
    for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
      if (!(eta_schedule[i] > 0.0)) throw std::invalid_argument("config: eta schedule must be positive");
      if (i > 0 && !(eta_schedule[i] < eta_schedule[i - 1]))
        throw std::invalid_argument("config: eta schedule must decrease strictly");
    }
  }
};

struct SolveResult {
  explicit SolveResult(NodeSystem n) : nodes(std::move(n)) {}

  NodeSystem nodes;
  double value = 0.0;
  ArcMaxima maxima;
  double equioscillation_gap = 0.0;
  Certificate certificate = Certificate::kGapReport;
  int iterations = 0;
  double wall_time_s = 0.0;
};

namespace detail {

inline std::vector<TorusPoint> project_ordered(const std::vector<double>& v) {
  std::vector<TorusPoint> pts;
  pts.reserve(v.size());
  for (double x : v) pts.emplace_back(x);
  if (cyclic_order(pts).ordered) return pts;
  std::vector<double> offs(v.size());
  for (std::size_t i = 1; i < v.size(); ++i) offs[i] = forward_gap(pts[0], pts[i]);
  std::sort(offs.begin() + 1, offs.end());
  std::vector<TorusPoint> fixed;
  fixed.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) fixed.push_back(cut_project(pts[0], offs[i]));
  return fixed;
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Standard Nelder-Mead on R^d; the objective is responsible for any
/// wrapping/projection. +inf values are legal.
template <class F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, double scale, int max_iters,
                             double ftol, double xtol) {
  const std::size_t d = x0.size();
  std::vector<std::vector<double>> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += scale;
  for (std::size_t i = 0; i <= d; ++i) fs[i] = f(xs[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> nxs(d + 1);
    std::vector<double> nfs(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      nxs[i] = xs[idx[i]];
      nfs[i] = fs[idx[i]];
    }
    xs = std::move(nxs);
    fs = std::move(nfs);
  };

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    order();
    double spread = 0.0, size = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      if (std::isfinite(fs[i]) && std::isfinite(fs[0])) spread = std::max(spread, fs[i] - fs[0]);
      for (std::size_t c = 0; c < d; ++c) size = std::max(size, std::fabs(xs[i][c] - xs[0][c]));
    }
    if (iter > 0 && spread < ftol && size < xtol) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t c = 0; c < d; ++c) centroid[c] += xs[i][c] / d;
    }
    auto blend = [&](double coef) {
      std::vector<double> p(d);
      for (std::size_t c = 0; c < d; ++c) p[c] = centroid[c] + coef * (xs[d][c] - centroid[c]);
      return p;
    };
    const std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    if (fr < fs[0]) {
      const std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        xs[d] = xe;
        fs[d] = fe;
      } else {
        xs[d] = xr;
        fs[d] = fr;
      }
    } else if (fr < fs[d - 1]) {
      xs[d] = xr;
      fs[d] = fr;
    } else {
      const bool outside = fr < fs[d];
      const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fs[d])) {
        xs[d] = xc;
        fs[d] = fc;
      } else {
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t c = 0; c < d; ++c) xs[i][c] = xs[0][c] + 0.5 * (xs[i][c] - xs[0][c]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }
  order();
  return {xs[0], fs[0], iter};
}

/// Solve the (d x d) system A x = b by Gaussian elimination with partial
/// pivoting; returns false when the matrix is numerically singular.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& out) {
  const std::size_t d = b.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (std::fabs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < d; ++r) {
      const double m = a[r][col] / a[col][col];
      for (std::size_t c = col; c < d; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  out.assign(d, 0.0);
  for (std::size_t r = d; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < d; ++c) s -= a[r][c] * out[c];
    out[r] = s / a[r][r];
  }
  return true;
}

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Anchored coordinates: nodes are (a, a+u_1, ..., a+u_{n-1}) with
/// 0 < u_1 < ... < u_{n-1} < 1.
class AnchoredMap {
 public:
  AnchoredMap(const Problem& p, TorusPoint anchor, const SolveConfig& cfg)
      : p_(p), anchor_(anchor), cfg_(cfg) {}

  std::vector<double> clamp(std::vector<double> u) const {
    const double margin = cfg_.tol_node;
    std::sort(u.begin(), u.end());
    double lo = margin;
    for (double& x : u) {
      x = std::max(x, lo);
      lo = x + margin;
    }
    double hi = 1.0 - margin;
    for (std::size_t i = u.size(); i-- > 0;) {
      u[i] = std::min(u[i], hi);
      hi = u[i] - margin;
    }
    return u;
  }

  NodeSystem nodes(const std::vector<double>& u) const {
    std::vector<TorusPoint> pts{anchor_};
    for (double x : u) pts.push_back(cut_project(anchor_, x));
    return NodeSystem(std::move(pts));
  }

  /// Difference map at u; nullopt when some arc maximum is -inf.
  std::optional<std::vector<double>> residual(const std::vector<double>& u) const {
    const ArcMaxima m = arc_maxima(p_, nodes(u), cfg_.arc());
    std::vector<double> r;
    r.reserve(m.values.size() - 1);
    for (std::size_t j = 0; j + 1 < m.values.size(); ++j) {
      if (m.values[j] == kNegInf || m.values[j + 1] == kNegInf) return std::nullopt;
      r.push_back(m.values[j + 1] - m.values[j]);
    }
    return r;
  }

 private:
  const Problem& p_;
  TorusPoint anchor_;
  const SolveConfig& cfg_;
};

}  // namespace detail

/// Equioscillation solve with node 1 pinned to the anchor: finds the root
/// of the difference map over the remaining n-1 coordinates by damped
/// quasi-Newton with a finite-difference Jacobian, falling back to
/// coordinate bisection when the Newton model stalls.
inline SolveResult solve_equioscillation(const Problem& p, TorusPoint anchor, const SolveConfig& cfg = {},
                                         const std::optional<NodeSystem>& warm_start = std::nullopt) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t m = static_cast<std::size_t>(p.n) - 1;
  detail::AnchoredMap map(p, anchor, cfg);

  std::vector<double> u(m);
  if (warm_start && static_cast<int>(warm_start->size()) == p.n) {
    for (std::size_t i = 0; i < m; ++i) u[i] = cut_lift(anchor, (*warm_start)[i + 1]);
  } else {
    for (std::size_t i = 0; i < m; ++i) u[i] = static_cast<double>(i + 1) / p.n;
  }
  u = map.clamp(u);

  auto finish = [&](const std::vector<double>& ufin, int iters) {
    SolveResult res{map.nodes(ufin)};
    res.maxima = arc_maxima(p, res.nodes, cfg.arc());
    res.value = res.maxima.max();
    res.equioscillation_gap = res.maxima.max() - res.maxima.min();
    res.certificate = res.equioscillation_gap <= cfg.tol_value ? Certificate::kEquioscillating
                                                               : Certificate::kGapReport;
    res.iterations = iters;
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };

  if (m == 0) return finish(u, 0);

  auto res_or_throw = [&](const std::vector<double>& q) {
    auto r = map.residual(q);
    return r;
  };

  std::optional<std::vector<double>> r0 = res_or_throw(u);
  if (!r0) {
    // scan for an admissible start along the most constrained coordinate
    bool found = false;
    for (int s = 1; s <= 64 && !found; ++s) {
      std::vector<double> cand(m);
      for (std::size_t i = 0; i < m; ++i) {
        cand[i] = std::fmod(static_cast<double>(i + 1) / (m + 1) + s / 64.0, 1.0);
      }
      cand = map.clamp(cand);
      if (auto r = map.residual(cand)) {
        u = cand;
        r0 = r;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("solve_equioscillation: no admissible start (outside Y*(a))");
  }

  const double fd_step = 1e-7;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    const double norm0 = detail::inf_norm(*r0);
    if (norm0 <= cfg.tol_value) return finish(u, iter);

    // finite-difference Jacobian, column by column
    std::vector<std::vector<double>> jac(m, std::vector<double>(m, 0.0));
    bool jac_ok = true;
    for (std::size_t c = 0; c < m && jac_ok; ++c) {
      std::vector<double> up = u;
      double step = fd_step;
      up[c] += step;
      if (!(c + 1 < m ? up[c] < u[c + 1] - cfg.tol_node : up[c] < 1.0 - cfg.tol_node)) {
        step = -fd_step;
        up[c] = u[c] + step;
      }
      const auto rp = map.residual(up);
      if (!rp) {
        jac_ok = false;
        break;
      }
      for (std::size_t rrow = 0; rrow < m; ++rrow) jac[rrow][c] = ((*rp)[rrow] - (*r0)[rrow]) / step;
    }

    bool stepped = false;
    std::vector<double> dir;
    std::vector<double> neg(m);
    for (std::size_t i = 0; i < m; ++i) neg[i] = -(*r0)[i];
    if (jac_ok && detail::solve_linear(jac, neg, dir)) {
      double damp = 1.0;
      for (int back = 0; back < 24; ++back, damp *= 0.5) {
        std::vector<double> cand(m);
        for (std::size_t i = 0; i < m; ++i) cand[i] = u[i] + damp * dir[i];
        cand = map.clamp(cand);
        const auto rc = map.residual(cand);
        if (rc && detail::inf_norm(*rc) < norm0) {
          u = cand;
          r0 = rc;
          stepped = true;
          break;
        }
      }
    }
    if (!stepped) {
      // coordinate bisection on each difference in turn
      for (std::size_t c = 0; c < m; ++c) {
        const double lo_bound = (c == 0 ? cfg.tol_node : u[c - 1] + cfg.tol_node);
        const double hi_bound = (c + 1 < m ? u[c + 1] - cfg.tol_node : 1.0 - cfg.tol_node);
        auto comp = [&](double x) -> std::optional<double> {
          std::vector<double> cand = u;
          cand[c] = x;
          const auto rc = map.residual(cand);
          if (!rc) return std::nullopt;
          return (*rc)[c];
        };
        // bracket a sign change of the c-th difference
        const int scan = 48;
        double best_lo = u[c], best_hi = u[c];
        std::optional<double> v_lo, v_hi;
        double prev_x = lo_bound;
        std::optional<double> prev_v = comp(lo_bound);
        bool bracketed = false;
        for (int s = 1; s <= scan && !bracketed; ++s) {
          const double x = lo_bound + (hi_bound - lo_bound) * s / scan;
          const auto v = comp(x);
          if (prev_v && v && (*prev_v <= 0.0) != (*v <= 0.0)) {
            best_lo = prev_x;
            best_hi = x;
            v_lo = prev_v;
            v_hi = v;
            bracketed = true;
          }
          prev_x = x;
          prev_v = v;
        }
        if (!bracketed) continue;
        for (int b = 0; b < 60 && best_hi - best_lo > cfg.tol_node; ++b) {
          const double mid = 0.5 * (best_lo + best_hi);
          const auto vm = comp(mid);
          if (!vm) break;
          if ((*v_lo <= 0.0) == (*vm <= 0.0)) {
            best_lo = mid;
            v_lo = vm;
          } else {
            best_hi = mid;
            v_hi = vm;
          }
        }
        u[c] = 0.5 * (best_lo + best_hi);
      }
      u = map.clamp(u);
      const auto rn = map.residual(u);
      if (!rn) throw std::runtime_error("solve_equioscillation: iterate left the admissible set");
      if (detail::inf_norm(*rn) >= norm0 - 1e-15 && norm0 > cfg.tol_value) {
        // no progress from either strategy
        if (norm0 <= 1e-6) return finish(u, iter);  // near-solution plateau
        throw std::runtime_error("solve_equioscillation: stalled before convergence");
      }
      r0 = rn;
    }
  }
  if (detail::inf_norm(*r0) <= 1e-6) return finish(u, iter);
  throw std::runtime_error("solve_equioscillation: did not converge within max_iters");
}

namespace detail {

struct ExtremalObjective {
  const Problem& p;
  SolveMode mode;
  const SolveConfig& cfg;

  double operator()(const std::vector<double>& v) const {
    const NodeSystem y{project_ordered(v)};
    const ArcMaxima m = arc_maxima(p, y, cfg.arc());
    if (mode == SolveMode::kMinimax) return m.max();
    const double lo = m.min();
    return lo == kNegInf ? std::numeric_limits<double>::infinity() : -lo;
  }
};

inline bool lex_less(const NodeSystem& a, const NodeSystem& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
  }
  return false;
}

}  // namespace detail

/// Shared pipeline for the minimax and maximin problems: multistart
/// derivative-free descent over the cyclic simplex, then (for singular
/// kernels) refinement through anchored equioscillation solves around the
/// best anchor found.
inline SolveResult solve_extremal(const Problem& p, const SolveConfig& cfg, SolveMode mode,
                                  const std::optional<NodeSystem>& hint = std::nullopt) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  detail::ExtremalObjective obj{p, mode, cfg};

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<std::vector<double>> starts;
  if (hint && static_cast<int>(hint->size()) == p.n) {
    std::vector<double> h;
    for (std::size_t i = 0; i < hint->size(); ++i) h.push_back((*hint)[i].value());
    starts.push_back(std::move(h));
  }
  for (int s = 0; s < cfg.multistart; ++s) {
    std::vector<double> v(p.n);
    for (double& x : v) x = u01(rng);
    std::sort(v.begin(), v.end());
    starts.push_back(std::move(v));
  }

  // Independent local searches, merged deterministically by
  // (value, lexicographic nodes).
  struct LocalBest {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    int iterations = 0;
  };
  const auto chunks = map_chunks<LocalBest>(starts.size(), [&](std::size_t b, std::size_t e) {
    LocalBest best;
    for (std::size_t s = b; s < e; ++s) {
      const auto r = detail::nelder_mead(obj, starts[s], 0.07, cfg.max_iters, cfg.tol_value * 0.1,
                                         cfg.tol_node * 10.0);
      best.iterations += r.iterations;
      if (r.value < best.value ||
          (r.value == best.value && !best.x.empty() &&
           detail::lex_less(NodeSystem(detail::project_ordered(r.x)),
                            NodeSystem(detail::project_ordered(best.x))))) {
        best.value = r.value;
        best.x = r.x;
      }
    }
    return best;
  });
  LocalBest best;
  int total_iters = 0;
  for (const auto& c : chunks) {
    total_iters += c.iterations;
    if (c.x.empty()) continue;
    if (c.value < best.value ||
        (c.value == best.value && !best.x.empty() &&
         detail::lex_less(NodeSystem(detail::project_ordered(c.x)),
                          NodeSystem(detail::project_ordered(best.x))))) {
      best.value = c.value;
      best.x = c.x;
    }
  }
  if (best.x.empty()) throw std::runtime_error("solve: no admissible start");

  NodeSystem nodes{detail::project_ordered(best.x)};

  if (p.kernel.singular && p.n >= 2) {
    // Equioscillation refinement: polish the anchor through the value of
    // the anchored equioscillating system.
    std::optional<NodeSystem> warm = nodes;
    auto mu = [&](double a) -> double {
      try {
        const SolveResult r = solve_equioscillation(p, TorusPoint(a), cfg, warm);
        if (r.certificate != Certificate::kEquioscillating) return std::numeric_limits<double>::infinity();
        warm = r.nodes;
        total_iters += r.iterations;
        return mode == SolveMode::kMinimax ? r.value : -r.value;
      } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    const double a0 = nodes[0].value();
    const double width = 0.06;
    const GoldenResult g = golden_max([&](double a) { return -mu(a); }, a0 - width, a0 + width, 1e-10);
    if (g.value > -std::numeric_limits<double>::infinity() && std::isfinite(g.value)) {
      try {
        const SolveResult refined = solve_equioscillation(p, TorusPoint(g.x), cfg, warm);
        const double refined_obj = mode == SolveMode::kMinimax ? refined.value : -refined.value;
        if (refined_obj <= best.value) {
          nodes = refined.nodes;
          total_iters += refined.iterations;
        }
      } catch (const std::exception&) {
        // keep the descent result
      }
    }
  }

  SolveResult res{nodes};
  res.maxima = arc_maxima(p, nodes, cfg.arc());
  res.value = mode == SolveMode::kMinimax ? res.maxima.max() : res.maxima.min();
  res.equioscillation_gap =
      res.maxima.min() == kNegInf ? std::numeric_limits<double>::infinity() : res.maxima.max() - res.maxima.min();
  res.certificate = res.equioscillation_gap <= cfg.tol_value ? Certificate::kEquioscillating
                                                             : Certificate::kGapReport;
  res.iterations = total_iters;
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline SolveResult solve_minimax(const Problem& p, const SolveConfig& cfg = {}) {
  return solve_extremal(p, cfg, SolveMode::kMinimax);
}

inline SolveResult solve_maximin(const Problem& p, const SolveConfig& cfg = {}) {
  return solve_extremal(p, cfg, SolveMode::kMaximin);
}

struct MuSample {
  double anchor = 0.0;
  bool ok = false;
  double value = 0.0;
  std::vector<double> nodes;
  std::string error;
};

/// Continuation sweep of the equioscillation value over anchor positions,
/// warm-starting each solve from its predecessor. Failures are flagged per
/// grid point and the sweep continues.
inline std::vector<MuSample> trace_mu(const Problem& p, const std::vector<TorusPoint>& anchors,
                                      const SolveConfig& cfg = {}) {
  std::vector<MuSample> out;
  out.reserve(anchors.size());
  std::optional<NodeSystem> warm;
  double prev_anchor = 0.0;
  for (const TorusPoint& a : anchors) {
    MuSample s;
    s.anchor = a.value();
    std::optional<NodeSystem> shifted;
    if (warm) {
      std::vector<TorusPoint> pts;
      const double delta = a.value() - prev_anchor;
      for (std::size_t i = 0; i < warm->size(); ++i) pts.emplace_back((*warm)[i].value() + delta);
      shifted = NodeSystem(std::move(pts));
    }
    try {
      const SolveResult r = solve_equioscillation(p, a, cfg, shifted);
      s.ok = r.certificate == Certificate::kEquioscillating;
      s.value = r.value;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s.nodes.push_back(r.nodes[i].value());
      if (s.ok) {
        warm = r.nodes;
        prev_anchor = a.value();
      } else {
        s.error = "gap above tolerance";
      }
    } catch (const std::exception& e) {
      s.ok = false;
      s.error = e.what();
    }
    out.push_back(std::move(s));
  }
  return out;
}

struct HomotopyStep {
  double eta = 0.0;
  double value = 0.0;
};

struct HomotopyResult {
  SolveResult result;
  std::vector<HomotopyStep> steps;
  bool monotone = true;
};

/// Smoothing homotopy for singular kernels that need not be strictly
/// concave: solve the strictly concave smoothed problem down a decreasing
/// eta schedule (upper smoothing for minimax, lower for maximin),
/// warm-starting each stage, and report the limit estimate together with
/// the per-stage monotonicity record.
inline HomotopyResult smoothing_homotopy(const Problem& p, const SolveConfig& cfg, SolveMode target) {
  cfg.validate();
  if (!p.kernel.singular)
    throw std::invalid_argument("smoothing_homotopy: kernel must be singular");
  if (cfg.eta_schedule.empty()) throw std::invalid_argument("smoothing_homotopy: empty eta schedule");

  const SmoothMode smode = target == SolveMode::kMinimax ? SmoothMode::kUpper : SmoothMode::kLower;
  std::optional<NodeSystem> warm;
  std::optional<SolveResult> last;
  std::vector<HomotopyStep> steps;
  bool monotone = true;
  for (double eta : cfg.eta_schedule) {
    Problem sp(smooth(p.kernel, eta, smode), p.nu, p.field);
    SolveResult r = solve_extremal(sp, cfg, target, warm);
    steps.push_back({eta, r.value});
    if (steps.size() >= 2) {
      const double prev = steps[steps.size() - 2].value;
      if (target == SolveMode::kMinimax ? (r.value > prev + 1e-9) : (r.value < prev - 1e-9))
        monotone = false;
    }
    warm = r.nodes;
    last = std::move(r);
  }
  return HomotopyResult{std::move(*last), std::move(steps), monotone};
}

struct OracleResult {
  double minimax_estimate = 0.0;   // min over the grid of the global maximum
  double maximin_estimate = 0.0;   // max over the grid of the minimal arc maximum
  std::vector<double> argmin;
  std::vector<double> argmax;
  int grid = 0;
};

/// Exhaustive grid oracle: evaluates the arc maxima on every cyclically
/// ordered tuple of grid points (sorted tuples cover all node sets) and
/// returns the grid extrema. Deterministic; parallel over the leading
/// coordinate with an ordered merge.
inline OracleResult brute_force(const Problem& p, int grid_n, const SolveConfig& cfg = {}) {
  if (grid_n < 2) throw std::invalid_argument("brute_force: grid must be >= 2");
  double tuples = 1.0;
  for (int i = 0; i < p.n; ++i) tuples = tuples * (grid_n + i) / (i + 1);
  if (tuples > 5e7 || p.n > 6) throw std::invalid_argument("brute_force: grid too large for exhaustive search");

  struct Best {
    double min_mbar = std::numeric_limits<double>::infinity();
    double max_munder = kNegInf;
    std::vector<double> argmin, argmax;
  };
  const int n = p.n;
  const auto chunks = map_chunks<Best>(static_cast<std::size_t>(grid_n), [&](std::size_t b, std::size_t e) {
    Best best;
    std::vector<int> idx(n);
    std::vector<double> vals(n);
    for (std::size_t first = b; first < e; ++first) {
      idx.assign(n, static_cast<int>(first));
      while (true) {
        for (int i = 0; i < n; ++i) vals[i] = static_cast<double>(idx[i]) / grid_n;
        std::vector<TorusPoint> pts;
        pts.reserve(n);
        for (double v : vals) pts.emplace_back(v);
        const NodeSystem y(std::move(pts));
        const ArcMaxima m = arc_maxima(p, y, cfg.arc());
        const double mbar = m.max();
        const double munder = m.min();
        if (mbar < best.min_mbar) {
          best.min_mbar = mbar;
          best.argmin = vals;
        }
        if (munder > best.max_munder) {
          best.max_munder = munder;
          best.argmax = vals;
        }
        // next nondecreasing tuple with fixed leading index
        int pos = n - 1;
        while (pos >= 1 && idx[pos] == grid_n - 1) --pos;
        if (pos < 1) break;
        ++idx[pos];
        for (int i = pos + 1; i < n; ++i) idx[i] = idx[pos];
      }
    }
    return best;
  });

  Best best;
  for (const auto& c : chunks) {
    if (!c.argmin.empty() && c.min_mbar < best.min_mbar) {
      best.min_mbar = c.min_mbar;
      best.argmin = c.argmin;
    }
    if (!c.argmax.empty() && c.max_munder > best.max_munder) {
      best.max_munder = c.max_munder;
      best.argmax = c.argmax;
    }
  }
  OracleResult out;
  out.minimax_estimate = best.min_mbar;
  out.maximin_estimate = best.max_munder;
  out.argmin = best.argmin;
  out.argmax = best.argmax;
  out.grid = grid_n;
  return out;
}

}  // namespace equiosc
