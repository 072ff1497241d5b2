#include "hpt/distance.hpp"

#include <cmath>
#include <cstdio>

namespace hpt {

Distance Distance::finite(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error("distance must be a finite nonnegative number, got " + std::to_string(v));
  }
  Distance d;
  d.value_ = v;
  return d;
}

double Distance::value() const {
  if (infinite_) throw Error("value() on an infinite distance");
  return value_;
}

Distance operator+(Distance a, Distance b) {
  if (a.infinite_ || b.infinite_) return Distance::infinity();
  return Distance::finite(a.value_ + b.value_);
}

Distance operator*(Distance a, Distance b) {
  if (a.infinite_ || b.infinite_) {
    // 0 * inf has no convention; callers dividing out the infinite factor
    // never get here.
    if ((a.is_finite() && a.value_ == 0.0) || (b.is_finite() && b.value_ == 0.0)) {
      throw Error("0 * inf is indeterminate");
    }
    return Distance::infinity();
  }
  return Distance::finite(a.value_ * b.value_);
}

Distance operator/(Distance a, Distance b) {
  if (a.infinite_ && b.infinite_) throw Error("inf / inf is indeterminate");
  if (b.infinite_) return Distance::finite(0.0);
  if (b.value_ == 0.0) {
    if (a.is_finite() && a.value_ == 0.0) throw Error("0 / 0 is indeterminate");
    return Distance::infinity();
  }
  if (a.infinite_) return Distance::infinity();
  return Distance::finite(a.value_ / b.value_);
}

std::partial_ordering operator<=>(const Distance& a, const Distance& b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

std::string Distance::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

Distance vee(Distance a, Distance b) { return (a < b) ? b : a; }

}  // namespace hpt
