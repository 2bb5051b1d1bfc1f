#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "equiosc/sumtrans.hpp"

namespace equiosc {

/// Nontrivial partition of the arc indices {0..n-1}: shrink[j] = true puts
/// arc j in the class whose arcs shrink and maxima decrease, false in the
/// class whose arcs grow and maxima increase.
struct Partition {
  std::vector<bool> shrink;

  std::size_t size() const { return shrink.size(); }

  void validate(std::size_t n) const {
    if (shrink.size() != n) throw std::invalid_argument("partition: size mismatch");
    const auto in_i = std::count(shrink.begin(), shrink.end(), true);
    if (in_i == 0 || in_i == static_cast<long>(n)) throw std::invalid_argument("partition: must be nontrivial");
  }

  bool alternating() const {
    const std::size_t n = shrink.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (shrink[j] == shrink[(j + 1) % n]) return false;
    }
    return true;
  }
};

/// Balance ratio mu = p (a - alpha) / (q (beta - b)) of the pair widening
/// move alpha < a < b < beta. mu = 1 is the balance condition under which
/// the widened pair dominates outside [alpha, beta] and is dominated inside
/// [a, b].
inline double widen_pair(double alpha, double a, double b, double beta, double p, double q) {
  if (!(0.0 <= alpha && alpha < a && a < b && b < beta && beta <= 1.0))
    throw std::invalid_argument("widen_pair: need 0 <= alpha < a < b < beta <= 1");
  if (!(p > 0.0 && q > 0.0)) throw std::invalid_argument("widen_pair: weights must be positive");
  return p * (a - alpha) / (q * (beta - b));
}

struct WideningReport {
  int checked_outside = 0;
  int checked_inside = 0;
  int violations = 0;
  int nonstrict_outside = 0;  // finite sample points where the gap is not strictly positive
  double min_gap_outside = std::numeric_limits<double>::infinity();
  double min_gap_inside = std::numeric_limits<double>::infinity();

  bool passed() const { return violations == 0; }
};

/// Sampled verification of the widening inequalities at balance mu = 1:
/// p K(t-alpha) + q K(t-beta) <= p K(t-a) + q K(t-b) outside [alpha, beta]
/// and the reversed inequality on [a, b].
inline WideningReport check_widening(const Kernel& k, double alpha, double a, double b, double beta,
                                     double p, double q, int t_samples = 100) {
  const double mu = widen_pair(alpha, a, b, beta, p, q);
  if (std::fabs(mu - 1.0) > 1e-12) throw std::invalid_argument("check_widening: requires mu = 1");
  if (!k.periodic) throw std::invalid_argument("check_widening: kernel must be periodic");
  if (t_samples < 2) throw std::invalid_argument("check_widening: need at least 2 samples");

  WideningReport rep;
  const double slack = 1e-12;
  auto wide = [&](double t) { return p * k.eval(t - alpha) + q * k.eval(t - beta); };
  auto tight = [&](double t) { return p * k.eval(t - a) + q * k.eval(t - b); };

  auto check_outside = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    for (int i = 0; i < t_samples; ++i) {
      const double t = lo + (hi - lo) * i / (t_samples - 1);
      const double lhs = wide(t), rhs = tight(t);
      ++rep.checked_outside;
      if (lhs > rhs + slack) ++rep.violations;
      if (std::isfinite(lhs) && std::isfinite(rhs)) {
        rep.min_gap_outside = std::min(rep.min_gap_outside, rhs - lhs);
        if (rhs - lhs <= 0.0) ++rep.nonstrict_outside;
      }
    }
  };
  check_outside(0.0, alpha);
  check_outside(beta, 1.0);
  for (int i = 0; i < t_samples; ++i) {
    const double t = a + (b - a) * i / (t_samples - 1);
    const double lhs = wide(t), rhs = tight(t);
    ++rep.checked_inside;
    if (lhs < rhs - slack) ++rep.violations;
    if (std::isfinite(lhs) && std::isfinite(rhs)) rep.min_gap_inside = std::min(rep.min_gap_inside, lhs - rhs);
  }
  return rep;
}

namespace detail {

inline std::vector<double> arc_lengths(const NodeSystem& w) {
  std::vector<double> lens;
  for (const Arc& a : w.arcs()) lens.push_back(a.length());
  return lens;
}

}  // namespace detail

/// Direct perturbation for alternating partitions: node l moves by h/nu_l
/// counterclockwise when the arc it starts shrinks, clockwise otherwise.
/// Every shrinking arc shrinks strictly and every growing arc grows
/// strictly; the result stays cyclically ordered.
inline NodeSystem perturb_case0(const NodeSystem& w, const std::vector<double>& nu, const Partition& part,
                                double h) {
  const std::size_t n = w.size();
  part.validate(n);
  if (nu.size() != n) throw std::invalid_argument("perturb_case0: nu size mismatch");
  if (!part.alternating()) throw std::invalid_argument("perturb_case0: partition must alternate");

  const std::vector<double> lens = detail::arc_lengths(w);
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (part.shrink[j]) {
      if (lens[j] <= kTorusEps) throw std::invalid_argument("perturb_case0: shrinking arc is degenerate");
      delta = std::min(delta, lens[j]);
    }
  }
  const double max_nu = *std::max_element(nu.begin(), nu.end());
  if (!(h > 0.0) || h >= delta / (2.0 * max_nu))
    throw std::invalid_argument("perturb_case0: h must lie in (0, delta / (2 max nu))");
  for (std::size_t j = 0; j < n; ++j) {
    if (part.shrink[j] && h * (1.0 / nu[j] + 1.0 / nu[(j + 1) % n]) >= lens[j])
      throw std::invalid_argument("perturb_case0: h too large for arc geometry");
  }

  std::vector<TorusPoint> moved;
  moved.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double step = (part.shrink[l] ? 1.0 : -1.0) * h / nu[l];
    moved.emplace_back(w[l].value() + step);
  }
  return NodeSystem(std::move(moved));
}

/// General maximum perturbation: while two neighboring arcs share a class,
/// drop the node between them, perturb the reduced system, and reinsert the
/// node unchanged. Bottoms out at the alternating case.
inline NodeSystem perturb_general(const std::vector<double>& nu, const NodeSystem& w, const Partition& part,
                                  double h) {
  const std::size_t n = w.size();
  part.validate(n);
  if (nu.size() != n) throw std::invalid_argument("perturb_general: nu size mismatch");
  const std::vector<double> lens = detail::arc_lengths(w);
  for (std::size_t j = 0; j < n; ++j) {
    if (part.shrink[j] && lens[j] <= kTorusEps)
      throw std::invalid_argument("perturb_general: shrinking arc is degenerate");
  }
  if (part.alternating()) return perturb_case0(w, nu, part, h);

  // Some node k has both its arcs in one class; relabel so k sits at
  // position 1, away from the wrap-around of the listing.
  std::size_t k = n;
  for (std::size_t cand = 0; cand < n; ++cand) {
    if (part.shrink[(cand + n - 1) % n] == part.shrink[cand]) {
      k = cand;
      break;
    }
  }
  const std::size_t rot = (k + n - 1) % n;
  std::vector<TorusPoint> rnodes(n);
  std::vector<double> rnu(n);
  Partition rpart;
  rpart.shrink.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    rnodes[j] = w[(j + rot) % n];
    rnu[j] = nu[(j + rot) % n];
    rpart.shrink[j] = part.shrink[(j + rot) % n];
  }

  // Drop node 1; arcs 0 and 1 merge into the reduced arc 0.
  std::vector<TorusPoint> dnodes;
  std::vector<double> dnu;
  Partition dpart;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == 1) continue;
    dnodes.push_back(rnodes[j]);
    dnu.push_back(rnu[j]);
  }
  dpart.shrink.push_back(rpart.shrink[0]);
  for (std::size_t j = 2; j < n; ++j) dpart.shrink.push_back(rpart.shrink[j]);

  const NodeSystem reduced = perturb_general(dnu, NodeSystem(std::move(dnodes)), dpart, h);

  std::vector<TorusPoint> rebuilt(n);
  rebuilt[0] = reduced[0];
  rebuilt[1] = rnodes[1];  // the dropped node is reinserted unchanged
  for (std::size_t j = 2; j < n; ++j) rebuilt[j] = reduced[j - 1];

  std::vector<TorusPoint> out(n);
  for (std::size_t j = 0; j < n; ++j) out[(j + rot) % n] = rebuilt[j];
  return NodeSystem(std::move(out));
}

inline NodeSystem perturb_general(const Problem& p, const NodeSystem& w, const Partition& part, double h) {
  return perturb_general(p.nu, w, part, h);
}

/// Conservative admissible step for perturb_general: every node moves by at
/// most h / min(nu), which must stay well inside every positive arc length
/// and inside the alternating-case bound at every recursion level.
inline double default_perturbation_h(const NodeSystem& w, const std::vector<double>& nu) {
  double min_gap = std::numeric_limits<double>::infinity();
  for (const Arc& a : w.arcs()) {
    if (a.length() > kTorusEps) min_gap = std::min(min_gap, a.length());
  }
  const auto [nu_min, nu_max] = std::minmax_element(nu.begin(), nu.end());
  return std::min({1e-3, min_gap * (*nu_min) / 4.0, min_gap / (4.0 * (*nu_max))});
}

struct PerturbReport {
  int containment_violations = 0;
  int pointwise_checked = 0;
  int pointwise_violations = 0;
  int max_violations = 0;
  int strict_checked = 0;
  int strict_failures = 0;

  bool passed() const {
    return containment_violations == 0 && pointwise_violations == 0 && max_violations == 0;
  }
};

/// Sampled verification of the perturbation guarantees: arc containments,
/// pointwise F comparisons on the relevant arcs, arc-maxima inequalities,
/// and (for strictly concave kernels) strictness on nonsingular arcs.
inline PerturbReport verify_perturbation(const Problem& p, const NodeSystem& w, const NodeSystem& wp,
                                         const Partition& part, int samples_per_arc = 32,
                                         std::uint64_t seed = 1234) {
  const std::size_t n = w.size();
  part.validate(n);
  PerturbReport rep;
  const double slack = 1e-12;
  const auto arcs_w = w.arcs();
  const auto arcs_wp = wp.arcs();

  for (std::size_t j = 0; j < n; ++j) {
    const Arc &outer = part.shrink[j] ? arcs_w[j] : arcs_wp[j];
    const Arc &inner = part.shrink[j] ? arcs_wp[j] : arcs_w[j];
    if (outer.length() >= 1.0) continue;
    const double off = forward_gap(outer.start(), inner.start());
    if (off + inner.length() > outer.length() + slack) ++rep.containment_violations;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const ArcMaxima mw = arc_maxima(p, w);
  const ArcMaxima mwp = arc_maxima(p, wp);
  const bool strict_kernel = p.kernel.strictly_concave;

  for (std::size_t j = 0; j < n; ++j) {
    const Arc& domain = part.shrink[j] ? arcs_wp[j] : arcs_w[j];  // I: compare on the new arc, J: on the old
    for (int s = 0; s < samples_per_arc; ++s) {
      const TorusPoint t = domain.at(u01(rng) * domain.length());
      const double before = F_eval(p, w, t);
      const double after = F_eval(p, wp, t);
      ++rep.pointwise_checked;
      if (part.shrink[j] ? (after > before + slack) : (after < before - slack)) ++rep.pointwise_violations;
      if (strict_kernel && std::isfinite(before) && std::isfinite(after)) {
        ++rep.strict_checked;
        if (part.shrink[j] ? !(after < before) : !(after > before)) ++rep.strict_failures;
      }
    }
    if (part.shrink[j] ? (mwp.values[j] > mw.values[j] + slack) : (mwp.values[j] < mw.values[j] - slack))
      ++rep.max_violations;
    if (strict_kernel && mw.values[j] > kNegInf) {
      ++rep.strict_checked;
      if (part.shrink[j] ? !(mwp.values[j] < mw.values[j]) : !(mwp.values[j] > mw.values[j]))
        ++rep.strict_failures;
    }
  }
  return rep;
}

}  // namespace equiosc
