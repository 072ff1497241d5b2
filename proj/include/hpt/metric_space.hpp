#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpt/distance.hpp"

namespace hpt {

/// Relative slack for triangle-inequality checks: d(a,b) may exceed
/// d(a,c) + d(c,b) by at most this times the right-hand side.
inline constexpr double kTriangleSlack = 1e-12;

/// Row-major dense copy of the finite part of a space, used by the scans.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> d;
  /// original[i] is the index of dense point i in the source space.
  std::vector<std::size_t> original;

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

/// Finite point set with a symmetric matrix over [0, inf] and at most one
/// point at infinity (omega).
///
/// Construction only checks shapes and the Distance domain. Metric axioms
/// are reported by validate() so that invalid spaces (e.g. the involution
/// of a non-Ptolemy space) can still be represented and inspected.
class ExtendedMetricSpace {
 public:
  ExtendedMetricSpace() = default;
  ExtendedMetricSpace(std::vector<std::string> labels, std::vector<Distance> dist,
                      std::optional<std::size_t> omega = std::nullopt);

  /// Builds from a dense double matrix; +inf entries become infinite
  /// distances. Labels default to "0".."n-1".
  static ExtendedMetricSpace from_rows(const std::vector<std::vector<double>>& rows,
                                       std::vector<std::string> labels = {},
                                       std::optional<std::size_t> omega = std::nullopt);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] Distance at(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  [[nodiscard]] std::optional<std::size_t> omega() const { return omega_; }
  [[nodiscard]] bool has_omega() const { return omega_.has_value(); }
  [[nodiscard]] bool is_omega(std::size_t i) const { return omega_ && *omega_ == i; }

  /// Number of points other than omega.
  [[nodiscard]] std::size_t finite_size() const { return size() - (omega_ ? 1 : 0); }

  /// Dense copy of the non-omega block; throws if an entry there is infinite.
  [[nodiscard]] DenseMatrix finite_part() const;

  /// Same points in a new order: result point k is this point perm[k].
  [[nodiscard]] ExtendedMetricSpace permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const ExtendedMetricSpace&, const ExtendedMetricSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Distance> dist_;
  std::optional<std::size_t> omega_;
};

enum class ViolationKind { asymmetric, nonzero_diagonal, zero_distance, omega_rule, triangle };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// Point indices. For triangle violations: (a, b, via) with a < b and
  /// d(a,b) > d(a,via) + d(via,b).
  std::vector<std::size_t> witness;
  /// Amount by which the rule is broken (inf when an infinity is misplaced).
  double magnitude = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;  ///< sorted by witness, then kind
};

/// Reports every symmetry, diagonal, positivity, omega and triangle
/// violation. The triangle scan runs in parallel when workers != 1
/// (0 = OpenMP default); the result does not depend on the worker count.
ValidationReport validate(const ExtendedMetricSpace& space, int workers = 0);

/// Removes omega; labels of the remaining points are preserved.
ExtendedMetricSpace restrict_omega(const ExtendedMetricSpace& space);

/// Multiplies every finite distance by lambda > 0.
ExtendedMetricSpace scale(const ExtendedMetricSpace& space, double lambda);

/// Entrywise d^eps for eps in (0, 1]; the space must not contain omega.
ExtendedMetricSpace snowflake(const ExtendedMetricSpace& space, double eps);

/// Largest distance among non-omega points (0 for fewer than two).
double diameter(const ExtendedMetricSpace& space);

}  // namespace hpt
