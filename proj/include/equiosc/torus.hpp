#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "equiosc/util.hpp"

namespace equiosc {

/// Comparison tolerance for degeneracy detection on the torus.
inline constexpr double kTorusEps = 1e-12;

/// A point of T = R/Z, stored as its fractional part in [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;

  explicit TorusPoint(double r) : value_(wrap_value(r)) {}

  double value() const { return value_; }

  static double wrap_value(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("TorusPoint: non-finite input");
    double w = r - std::floor(r);
    if (w >= 1.0) w = 0.0;  // 1 - tiny rounds up to 1.0
    return w;
  }

  friend bool operator==(TorusPoint a, TorusPoint b) { return a.value_ == b.value_; }
  friend bool operator!=(TorusPoint a, TorusPoint b) { return a.value_ != b.value_; }

 private:
  double value_ = 0.0;
};

inline TorusPoint wrap(double r) { return TorusPoint(r); }

/// Geodesic distance on T, in [0, 1/2].
inline double dist(TorusPoint a, TorusPoint b) {
  double d = std::fabs(a.value() - b.value());
  return std::min(d, 1.0 - d);
}

/// Length of counterclockwise travel from a to b, in [0, 1).
inline double forward_gap(TorusPoint a, TorusPoint b) {
  double g = b.value() - a.value();
  if (g < 0.0) g += 1.0;
  if (g >= 1.0) g = 0.0;
  return g;
}

/// Inverse of the cut map at c: the unique x in [0,1) with wrap(x + c) = y.
inline double cut_lift(TorusPoint c, TorusPoint y) { return forward_gap(c, y); }

/// The cut map at c: x -> {x + c}.
inline TorusPoint cut_project(TorusPoint c, double x) { return TorusPoint(x + c.value()); }

struct CyclicOrder {
  bool ordered = false;  // some rotation of the listing is nondecreasing
  bool strict = false;   // all cyclic inequalities strict (open simplex)
};

/// Classify a node listing against the cyclic (weak/strict) ordering.
/// There is at most one descent in a circular listing of an ordered system.
inline CyclicOrder cyclic_order(const std::vector<TorusPoint>& nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw std::invalid_argument("cyclic_order: empty node list");
  if (n == 1) return {true, true};
  int descents = 0;
  bool any_equal = false;
  for (std::size_t i = 0; i < n; ++i) {
    const TorusPoint cur = nodes[i];
    const TorusPoint next = nodes[(i + 1) % n];
    if (dist(cur, next) <= kTorusEps) {
      any_equal = true;
    } else if (next.value() < cur.value()) {
      ++descents;
    }
  }
  const bool ordered = descents <= 1;
  return {ordered, ordered && !any_equal};
}

/// Closed arc traversed counterclockwise from start over a given length.
/// Length 0 is the degenerate one-point arc; length 1 is the full circle.
class Arc {
 public:
  Arc(TorusPoint start, double length) : start_(start), length_(length) {
    if (!(length >= 0.0 && length <= 1.0)) throw std::invalid_argument("Arc: length must lie in [0,1]");
  }

  TorusPoint start() const { return start_; }
  double length() const { return length_; }
  TorusPoint end() const { return cut_project(start_, length_); }

  bool contains(TorusPoint t, double tol = 0.0) const {
    return forward_gap(start_, t) <= length_ + tol;
  }

  /// Point at arc coordinate u in [0, length].
  TorusPoint at(double u) const { return cut_project(start_, u); }

 private:
  TorusPoint start_;
  double length_;
};

/// The n closed arcs between cyclically consecutive nodes. Lengths sum to 1.
/// When all nodes coincide the final (wrap-around) arc carries the full
/// circle and the others are degenerate.
inline std::vector<Arc> arcs_of(const std::vector<TorusPoint>& nodes) {
  if (!cyclic_order(nodes).ordered) throw std::invalid_argument("arcs_of: nodes are not in cyclic order");
  const std::size_t n = nodes.size();
  std::vector<Arc> arcs;
  arcs.reserve(n);
  double used = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double len = forward_gap(nodes[j], nodes[j + 1]);
    if (dist(nodes[j], nodes[j + 1]) <= kTorusEps) len = 0.0;  // coincident within tolerance
    arcs.emplace_back(nodes[j], len);
    used += len;
  }
  arcs.emplace_back(nodes[n - 1], std::max(0.0, 1.0 - used));
  return arcs;
}

}  // namespace equiosc
