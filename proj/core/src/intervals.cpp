#include "specgap/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specgap {

IntervalUnion IntervalUnion::merged(std::vector<Interval> parts, double merge_tol) {
  for (const Interval& iv : parts)
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("interval with lo > hi");
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalUnion u;
  for (const Interval& iv : parts) {
    if (!u.parts_.empty() && iv.lo <= u.parts_.back().hi + merge_tol)
      u.parts_.back().hi = std::max(u.parts_.back().hi, iv.hi);
    else
      u.parts_.push_back(iv);
  }
  return u;
}

bool IntervalUnion::contains(double x) const {
  for (const Interval& iv : parts_)
    if (iv.contains(x)) return true;
  return false;
}

double IntervalUnion::distance(double x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Interval& iv : parts_) {
    if (iv.contains(x)) return 0.0;
    d = std::min(d, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
  }
  return d;
}

double IntervalUnion::distance(const Interval& iv) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Interval& p : parts_) {
    if (p.hi < iv.lo)
      d = std::min(d, iv.lo - p.hi);
    else if (p.lo > iv.hi)
      d = std::min(d, p.lo - iv.hi);
    else
      return 0.0;
  }
  return d;
}

bool IntervalUnion::intersects(const Interval& iv) const { return distance(iv) == 0.0; }

std::vector<Interval> IntervalUnion::gaps() const {
  std::vector<Interval> g;
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
    g.push_back({parts_[i].hi, parts_[i + 1].lo});
  return g;
}

}  // namespace specgap
