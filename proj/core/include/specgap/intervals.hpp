#pragma once

#include <vector>

namespace specgap {

struct Interval {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Sorted disjoint union of closed intervals; consecutive parts are separated
// by more than the merge tolerance used at construction.
class IntervalUnion {
public:
  IntervalUnion() = default;

  // Sorts and merges intervals whose gap is <= merge_tol.
  static IntervalUnion merged(std::vector<Interval> parts, double merge_tol);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  double hull_lo() const { return parts_.front().lo; }
  double hull_hi() const { return parts_.back().hi; }

  bool contains(double x) const;

  // Distance from a point / closed interval to the union (0 if intersecting).
  double distance(double x) const;
  double distance(const Interval& iv) const;

  bool intersects(const Interval& iv) const;

  // Open intervals strictly between consecutive parts.
  std::vector<Interval> gaps() const;

private:
  std::vector<Interval> parts_;
};

}  // namespace specgap
