#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "equiosc/kernels.hpp"
#include "equiosc/torus.hpp"

namespace equiosc {

enum class PieceKind { kConstant, kLinear, kMinusInfinity };

/// One field piece on [start, end) in [0, 1).
/// Constant: J = value. Linear: J = value + slope * (t - start).
struct FieldPiece {
  double start = 0.0;
  double end = 0.0;
  PieceKind kind = PieceKind::kConstant;
  double value = 0.0;
  double slope = 0.0;
};

struct PointOverride {
  TorusPoint at;
  double value = 0.0;
};

/// External field J : T -> R u {-inf} as interval pieces partitioning
/// [0, 1) plus finitely many point overrides (overrides win).
class PiecewiseField {
 public:
  PiecewiseField(std::vector<FieldPiece> pieces, std::vector<PointOverride> overrides = {})
      : pieces_(std::move(pieces)), overrides_(std::move(overrides)) {
    validate();
  }

  const std::vector<FieldPiece>& pieces() const { return pieces_; }
  const std::vector<PointOverride>& overrides() const { return overrides_; }

  double eval(TorusPoint t) const {
    for (const auto& o : overrides_) {
      if (o.at == t) return o.value;
    }
    return piece_formula(piece_index_at(t.value()), t.value());
  }

  /// Index of the piece whose half-open interval contains t in [0,1).
  std::size_t piece_index_at(double t) const {
    std::size_t lo = 0, hi = pieces_.size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (pieces_[mid].start <= t) lo = mid; else hi = mid;
    }
    return lo;
  }

  /// Formula value of piece `idx` at t, extended to the closed interval
  /// [start, end] (one-sided limit at the right end). t may be the wrapped
  /// image of the piece end; it is lifted back before applying the formula.
  double piece_formula(std::size_t idx, double t) const {
    const FieldPiece& p = pieces_[idx];
    if (p.kind == PieceKind::kMinusInfinity) return kNegInf;
    if (t < p.start) t += 1.0;
    if (p.kind == PieceKind::kConstant) return p.value;
    return p.value + p.slope * (t - p.start);
  }

  /// Finite supremum over pieces and overrides.
  double sup() const {
    double s = kNegInf;
    for (const auto& p : pieces_) {
      if (p.kind == PieceKind::kMinusInfinity) continue;
      if (p.kind == PieceKind::kConstant) {
        s = std::max(s, p.value);
      } else {
        s = std::max({s, p.value, p.value + p.slope * (p.end - p.start)});
      }
    }
    for (const auto& o : overrides_) s = std::max(s, o.value);
    return s;
  }

  bool has_finite_piece() const {
    for (const auto& p : pieces_) {
      if (p.kind != PieceKind::kMinusInfinity && p.end > p.start) return true;
    }
    return false;
  }

 private:
  void validate() const {
    if (pieces_.empty()) throw std::invalid_argument("field: pieces must partition [0,1)");
    if (pieces_.front().start != 0.0) throw std::invalid_argument("field: pieces must partition [0,1) starting at 0");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const FieldPiece& p = pieces_[i];
      if (!(p.end > p.start)) throw std::invalid_argument("field: pieces must have positive length");
      if (i + 1 < pieces_.size() && pieces_[i + 1].start != p.end)
        throw std::invalid_argument("field: pieces must partition [0,1) without gaps or overlaps");
      if (p.kind != PieceKind::kMinusInfinity && (!std::isfinite(p.value) || !std::isfinite(p.slope)))
        throw std::invalid_argument("field: piece parameters must be finite");
    }
    if (pieces_.back().end != 1.0) throw std::invalid_argument("field: pieces must partition [0,1) ending at 1");
    for (const auto& o : overrides_) {
      if (!std::isfinite(o.value)) throw std::invalid_argument("field: override values must be finite");
    }
    if (sup() == kNegInf) throw std::invalid_argument("field: must be finite somewhere");
  }

  std::vector<FieldPiece> pieces_;
  std::vector<PointOverride> overrides_;
};

/// True iff J is finite at more than n points of T.
inline bool validate_n_field(const PiecewiseField& field, int n) {
  if (n < 1) throw std::invalid_argument("validate_n_field: n must be >= 1");
  if (field.has_finite_piece()) return true;
  return static_cast<int>(field.overrides().size()) > n;
}

/// J = 0 on {0} u [1/2, 1), J = -inf on (0, 1/2).
inline PiecewiseField example71_field() {
  std::vector<FieldPiece> pieces{
      {0.0, 0.5, PieceKind::kMinusInfinity, 0.0, 0.0},
      {0.5, 1.0, PieceKind::kConstant, 0.0, 0.0},
  };
  return PiecewiseField(std::move(pieces), {{TorusPoint(0.0), 0.0}});
}

/// Continuous piecewise-linear field: -alpha*t on [0,1/4),
/// alpha*(t-1/2) on [1/4,1/2), 0 on [1/2,1). Requires alpha > 4*pi so the
/// slope dominates the pure sum of translates near 0.
inline PiecewiseField tilde_field(double alpha) {
  if (!(alpha > 4.0 * kPi)) throw std::invalid_argument("tilde_field: alpha must exceed 4*pi");
  std::vector<FieldPiece> pieces{
      {0.0, 0.25, PieceKind::kLinear, 0.0, -alpha},
      {0.25, 0.5, PieceKind::kLinear, -alpha / 4.0, alpha},
      {0.5, 1.0, PieceKind::kConstant, 0.0, 0.0},
  };
  return PiecewiseField(std::move(pieces));
}

/// Zero field with point values J(1/l) = 1 - 1/l for l = 2..lmax.
/// (l = 1 would place the override at 0 with value 0, which the base field
/// already provides.)
inline PiecewiseField harmonic_step_field(int lmax) {
  if (lmax < 2) throw std::invalid_argument("harmonic_step_field: lmax must be >= 2");
  std::vector<PointOverride> overrides;
  overrides.reserve(lmax - 1);
  for (int l = 2; l <= lmax; ++l) {
    overrides.push_back({TorusPoint(1.0 / l), 1.0 - 1.0 / l});
  }
  return PiecewiseField({{0.0, 1.0, PieceKind::kConstant, 0.0, 0.0}}, std::move(overrides));
}

inline PiecewiseField zero_field() {
  return PiecewiseField({{0.0, 1.0, PieceKind::kConstant, 0.0, 0.0}});
}

}  // namespace equiosc
