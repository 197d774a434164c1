#pragma once

#include <algorithm>
#include <cmath>

namespace kreinreg {

// Closed interval [lo, hi] on the real line; empty when lo > hi.
// Used for support bookkeeping: every expression tree carries a closed
// interval that contains its support, and disjointness of these intervals
// is what lets inner products short-circuit to an exact zero.
struct Interval {
  double lo = 1.0;
  double hi = -1.0;  // default-constructed interval is empty

  static Interval of(double a, double b) { return {a, b}; }
  static Interval empty() { return {1.0, -1.0}; }

  bool is_empty() const { return !(lo <= hi); }
  double width() const { return is_empty() ? 0.0 : hi - lo; }

  bool contains(double x) const { return !is_empty() && lo <= x && x <= hi; }
  bool contains_strictly(double x) const {
    return !is_empty() && lo < x && x < hi;
  }

  Interval shifted(double s) const {
    if (is_empty()) return empty();
    return {lo + s, hi + s};
  }

  // Image under x -> lambda * x with lambda > 0.
  Interval scaled(double lambda) const {
    if (is_empty()) return empty();
    return {lo * lambda, hi * lambda};
  }

  static Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  }

  static Interval intersect(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return empty();
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    return r.is_empty() ? empty() : r;
  }

  static bool disjoint(const Interval& a, const Interval& b) {
    return intersect(a, b).is_empty();
  }
};

}  // namespace kreinreg
