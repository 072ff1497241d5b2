#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace hpt {

/// Thrown for precondition failures on any public operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nonnegative length or the symbol +inf.
///
/// Infinity is a tag, never a float sentinel. Arithmetic follows the usual
/// extended-real conventions: finite + inf = inf, finite / inf = 0, and
/// inf / inf is refused (it only ever arises inside the cross-ratio rules,
/// which resolve it before any arithmetic).
class Distance {
 public:
  constexpr Distance() = default;

  /// Throws on NaN, negative or non-finite input.
  static Distance finite(double v);
  static constexpr Distance infinity() {
    Distance d;
    d.infinite_ = true;
    return d;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

  /// The finite value; throws if infinite.
  [[nodiscard]] double value() const;

  friend Distance operator+(Distance a, Distance b);
  friend Distance operator*(Distance a, Distance b);
  friend Distance operator/(Distance a, Distance b);

  friend bool operator==(const Distance& a, const Distance& b) = default;
  friend std::partial_ordering operator<=>(const Distance& a, const Distance& b);

  [[nodiscard]] std::string to_string() const;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Max, with infinity absorbing.
Distance vee(Distance a, Distance b);

}  // namespace hpt
