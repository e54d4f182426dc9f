#pragma once

#include <vector>

#include "codedcache/rational.hpp"

namespace codedcache {

struct CurvePoint {
  Rational memory;
  Rational load;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Piecewise-linear (memory, load) curve with exact corner points.
/// Corners are stored with strictly increasing memory and no collinear interior points.
class TradeoffCurve {
public:
  TradeoffCurve() = default;
  /// Points must have strictly increasing memory; collinear interior points are dropped.
  explicit TradeoffCurve(std::vector<CurvePoint> points);

  /// Lower convex envelope of an arbitrary point cloud (duplicate memories keep the lowest load).
  static TradeoffCurve lower_convex_envelope(std::vector<CurvePoint> points);

  const std::vector<CurvePoint>& corners() const { return corners_; }

  /// Linear interpolation between adjacent corners. Throws std::out_of_range outside the span.
  Rational evaluate(const Rational& memory) const;

  bool is_convex() const;
  bool is_nonincreasing() const;

  friend bool operator==(const TradeoffCurve&, const TradeoffCurve&) = default;

private:
  std::vector<CurvePoint> corners_;
};

} // namespace codedcache
