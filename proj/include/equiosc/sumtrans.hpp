#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "equiosc/fields.hpp"
#include "equiosc/kernels.hpp"
#include "equiosc/torus.hpp"
#include "equiosc/util.hpp"

namespace equiosc {

/// Weighted sum-of-translates problem: kernel K, coefficients nu_j > 0,
/// external field J finite at more than n points.
struct Problem {
  Kernel kernel;
  std::vector<double> nu;
  PiecewiseField field;
  int n;

  Problem(Kernel k, std::vector<double> coeffs, PiecewiseField f)
      : kernel(std::move(k)), nu(std::move(coeffs)), field(std::move(f)), n(static_cast<int>(nu.size())) {
    if (n < 1) throw std::invalid_argument("problem: need at least one node");
    for (double v : nu) {
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("problem: nu must be positive");
    }
    if (!kernel.periodic) throw std::invalid_argument("problem: kernel must be periodic");
    if (!validate_n_field(field, n)) throw std::invalid_argument("problem: field is not an n-field");
  }
};

/// Cyclically ordered node system (closed cyclic simplex membership is
/// enforced at construction).
class NodeSystem {
 public:
  explicit NodeSystem(std::vector<TorusPoint> nodes) : nodes_(std::move(nodes)) {
    order_ = cyclic_order(nodes_);
    if (!order_.ordered) throw std::invalid_argument("node system: nodes are not in cyclic order");
  }

  static NodeSystem from_values(std::initializer_list<double> vals) {
    std::vector<TorusPoint> pts;
    for (double v : vals) pts.emplace_back(v);
    return NodeSystem(std::move(pts));
  }

  const std::vector<TorusPoint>& nodes() const { return nodes_; }
  TorusPoint operator[](std::size_t j) const { return nodes_[j]; }
  std::size_t size() const { return nodes_.size(); }
  bool strict() const { return order_.strict; }
  std::vector<Arc> arcs() const { return arcs_of(nodes_); }

 private:
  std::vector<TorusPoint> nodes_;
  CyclicOrder order_;
};

/// Pure sum of translates f(y, t) = sum_j nu_j K(t - y_j).
inline double f_eval(const Problem& p, const NodeSystem& y, TorusPoint t) {
  if (static_cast<int>(y.size()) != p.n) throw std::invalid_argument("f_eval: node count mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double term = eval_translate(p.kernel, t, y[j]);
    if (term == kNegInf) return kNegInf;
    s += p.nu[j] * term;
  }
  return s;
}

/// F(y, t) = J(t) + f(y, t) under extended arithmetic.
inline double F_eval(const Problem& p, const NodeSystem& y, TorusPoint t) {
  const double j = p.field.eval(t);
  if (j == kNegInf) return kNegInf;
  return ext_add(j, f_eval(p, y, t));
}

/// Per-arc suprema of F with maximizer locations. attained[j] = false means
/// the supremum is approached at an open piece end rather than attained.
struct ArcMaxima {
  std::vector<double> values;
  std::vector<TorusPoint> maximizers;
  std::vector<bool> attained;

  double max() const { return *std::max_element(values.begin(), values.end()); }
  double min() const { return *std::min_element(values.begin(), values.end()); }
};

struct ArcConfig {
  double tol_t = 1e-12;  // golden-section tolerance in t
};

namespace detail {

struct ArcCandidate {
  double value = kNegInf;
  double u = 0.0;
  bool attained = true;
};

inline void take_better(ArcCandidate& best, const ArcCandidate& c) {
  if (c.value > best.value || (c.value == best.value && c.attained && !best.attained)) best = c;
}

/// Supremum of F over one closed arc. The arc is parameterized by
/// u in [0, L]; the field's piece boundaries split it into segments on
/// which J is a single formula and f is concave, so F is unimodal there.
inline ArcCandidate arc_supremum(const Problem& p, const NodeSystem& y, const Arc& arc, const ArcConfig& cfg) {
  const double L = arc.length();
  ArcCandidate best;
  if (L <= 0.0) {
    best.value = F_eval(p, y, arc.start());
    best.u = 0.0;
    return best;
  }

  std::vector<double> cuts{0.0, L};
  for (const auto& piece : p.field.pieces()) {
    const double u = forward_gap(arc.start(), TorusPoint(piece.start));
    if (u > 0.0 && u < L) cuts.push_back(u);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Exact evaluations at all segment boundaries (field pieces are
  // left-closed, so boundary points carry their true value).
  for (double u : cuts) {
    take_better(best, {F_eval(p, y, arc.at(u)), u, true});
  }
  // Overrides inside the arc.
  for (const auto& o : p.field.overrides()) {
    const double u = forward_gap(arc.start(), o.at);
    if (u <= L) take_better(best, {ext_add(o.value, f_eval(p, y, o.at)), u, true});
  }

  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double u0 = cuts[s], u1 = cuts[s + 1];
    const std::size_t pidx = p.field.piece_index_at(arc.at(0.5 * (u0 + u1)).value());
    if (p.field.pieces()[pidx].kind == PieceKind::kMinusInfinity) continue;

    auto phi = [&](double u) {
      return ext_add(p.field.piece_formula(pidx, arc.at(u).value()), f_eval(p, y, arc.at(u)));
    };
    const double u_in = u1 - cfg.tol_t;
    if (u_in <= u0) continue;

    const GoldenResult g = golden_max(phi, u0, u_in, cfg.tol_t);
    take_better(best, {g.value, g.x, true});

    // One-sided limit at the (open) right end of the piece: if the actual
    // value at u1 falls below the approach value, the supremum there is
    // approached but not attained.
    const double limit_v = phi(u_in);
    const double actual_v = F_eval(p, y, arc.at(u1));
    if (actual_v < limit_v) take_better(best, {limit_v, u1, false});
  }
  return best;
}

}  // namespace detail

/// m_j*(y) = sup { F(y, t) : t in I_j*(y) } for each of the n arcs.
inline ArcMaxima arc_maxima(const Problem& p, const NodeSystem& y, const ArcConfig& cfg = {}) {
  if (static_cast<int>(y.size()) != p.n) throw std::invalid_argument("arc_maxima: node count mismatch");
  ArcMaxima out;
  const std::vector<Arc> arcs = y.arcs();
  out.values.reserve(arcs.size());
  out.maximizers.reserve(arcs.size());
  out.attained.reserve(arcs.size());
  for (const Arc& arc : arcs) {
    const detail::ArcCandidate c = detail::arc_supremum(p, y, arc, cfg);
    out.values.push_back(c.value);
    out.maximizers.push_back(arc.at(c.u));
    out.attained.push_back(c.attained);
  }
  return out;
}

/// Supremum of F(y, .) over an arbitrary closed arc.
inline double sup_over_arc(const Problem& p, const NodeSystem& y, const Arc& arc, const ArcConfig& cfg = {}) {
  return detail::arc_supremum(p, y, arc, cfg).value;
}

/// Global maximum of F over T (always finite for valid problems).
inline double m_bar_star(const Problem& p, const NodeSystem& y, const ArcConfig& cfg = {}) {
  return arc_maxima(p, y, cfg).max();
}

/// Minimum of the arc maxima (may be -inf on degenerate/singular arcs).
inline double m_under_star(const Problem& p, const NodeSystem& y, const ArcConfig& cfg = {}) {
  return arc_maxima(p, y, cfg).min();
}

/// Difference map Phi*: consecutive arc-maxima differences
/// (m_{j+1}* - m_j*), j = 1..n-1. Zero exactly at equioscillation.
inline std::vector<double> phi_star(const Problem& p, const NodeSystem& y, const ArcConfig& cfg = {}) {
  const ArcMaxima m = arc_maxima(p, y, cfg);
  std::vector<double> d;
  d.reserve(m.values.size() - 1);
  for (std::size_t j = 0; j + 1 < m.values.size(); ++j) {
    if (m.values[j] == kNegInf || m.values[j + 1] == kNegInf)
      throw std::domain_error("phi_star: arc maximum is -inf (node system outside admissible set)");
    d.push_back(m.values[j + 1] - m.values[j]);
  }
  return d;
}

/// |T(z; t)| = prod_j |sin(pi (t - z_j))|^{nu_j}.
inline double gtp_eval(const std::vector<double>& nu, const NodeSystem& z, TorusPoint t) {
  double prod = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    prod *= std::pow(std::fabs(std::sin(kPi * (t.value() - z[j].value()))), nu[j]);
  }
  return prod;
}

/// Weighted sup norm of the monic generalized trigonometric polynomial with
/// root multiplicities nu at nodes z, where the weight is given through its
/// logarithm J = log w. Equals exp(m_bar*) of the log-sine problem.
inline double gtp_weighted_norm(const PiecewiseField& log_weight, const std::vector<double>& nu,
                                const NodeSystem& z, const ArcConfig& cfg = {}) {
  Problem p(log_sine(), nu, log_weight);
  return std::exp(m_bar_star(p, z, cfg));
}

}  // namespace equiosc
