#include "codedcache/tradeoff_curve.hpp"

#include <algorithm>
#include <stdexcept>

namespace codedcache {

namespace {

// Sign of the turn a -> b -> c; positive when c lies above the chord from a.
int turn(const CurvePoint& a, const CurvePoint& b, const CurvePoint& c) {
  const Rational cross = (b.memory - a.memory) * (c.load - a.load) - (b.load - a.load) * (c.memory - a.memory);
  return cross.sign();
}

} // namespace

TradeoffCurve::TradeoffCurve(std::vector<CurvePoint> points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].memory < points[i].memory)) {
      throw std::invalid_argument("curve points must have strictly increasing memory");
    }
  }
  for (auto& p : points) {
    while (corners_.size() >= 2 && turn(corners_[corners_.size() - 2], corners_.back(), p) == 0) {
      corners_.pop_back();
    }
    corners_.push_back(std::move(p));
  }
}

TradeoffCurve TradeoffCurve::lower_convex_envelope(std::vector<CurvePoint> points) {
  std::sort(points.begin(), points.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return a.memory < b.memory || (a.memory == b.memory && a.load < b.load);
  });
  std::vector<CurvePoint> hull;
  for (auto& p : points) {
    if (!hull.empty() && hull.back().memory == p.memory) continue;
    // Monotone chain: keep only counter-clockwise turns.
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(std::move(p));
  }
  return TradeoffCurve(std::move(hull));
}

Rational TradeoffCurve::evaluate(const Rational& memory) const {
  if (corners_.empty() || memory < corners_.front().memory || memory > corners_.back().memory) {
    throw std::out_of_range("memory " + memory.str() + " outside curve span");
  }
  auto it = std::lower_bound(corners_.begin(), corners_.end(), memory,
                             [](const CurvePoint& p, const Rational& m) { return p.memory < m; });
  if (it->memory == memory) return it->load;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.load + (hi.load - lo.load) * (memory - lo.memory) / (hi.memory - lo.memory);
}

bool TradeoffCurve::is_convex() const {
  for (std::size_t i = 2; i < corners_.size(); ++i) {
    if (turn(corners_[i - 2], corners_[i - 1], corners_[i]) < 0) return false;
  }
  return true;
}

bool TradeoffCurve::is_nonincreasing() const {
  for (std::size_t i = 1; i < corners_.size(); ++i) {
    if (corners_[i].load > corners_[i - 1].load) return false;
  }
  return true;
}

} // namespace codedcache
