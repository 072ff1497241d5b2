#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpt/metric_space.hpp"

namespace hpt {

/// A point (z, h) of Z x (0, inf).
struct ConePoint {
  std::size_t base = 0;
  double height = 1.0;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// 2 log((d(z,z') + h v h') / sqrt(h h')), v = max. Throws on nonpositive
/// heights.
double cone_distance(const ConePoint& p, const ConePoint& q, const ExtendedMetricSpace& z);

/// Finite sample of the hyperbolic cone over a metric space Z, with base
/// point o = (z0, 1). Distances are evaluated on demand.
class ConeSpace {
 public:
  ConeSpace(ExtendedMetricSpace base, std::vector<ConePoint> points, std::size_t z0);

  [[nodiscard]] const ExtendedMetricSpace& base() const { return base_; }
  [[nodiscard]] const std::vector<ConePoint>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] std::size_t z0() const { return z0_; }
  [[nodiscard]] ConePoint origin() const { return {z0_, 1.0}; }

  [[nodiscard]] double distance(const ConePoint& p, const ConePoint& q) const {
    return cone_distance(p, q, base_);
  }
  [[nodiscard]] double distance(std::size_t i, std::size_t j) const {
    return cone_distance(points_.at(i), points_.at(j), base_);
  }
  /// |z z0|
  [[nodiscard]] double base_norm(std::size_t z) const { return base_.at(z, z0_).value(); }

  /// Dense metric over the sample, labels "<base label>@<height>".
  [[nodiscard]] ExtendedMetricSpace materialize() const;

 private:
  ExtendedMetricSpace base_;
  std::vector<ConePoint> points_;
  std::size_t z0_;
};

/// D 2^-k for k = 0 .. count-1.
std::vector<double> geometric_heights(double diam, std::size_t count);

/// All pairs (z, h), base-major. Heights must be positive and strictly
/// descending; with `truncate` they must not exceed diam(Z).
ConeSpace build_cone(const ExtendedMetricSpace& z, const std::vector<double>& heights,
                     bool truncate = false, std::size_t z0 = 0);

/// Closed form log((|z| + h v 1)(|z'| + h' v 1) / (|zz'| + h v h')) of the
/// Gromov product at o = (z0, 1).
double cone_gromov_product(const ConePoint& p, const ConePoint& q, const ConeSpace& cone);

/// The same product from the half-sum of cone distances.
double cone_gromov_product_halfsum(const ConePoint& p, const ConePoint& q, const ConeSpace& cone);

struct BoundaryMetric {
  /// Bourdon metric on Z plus a final point "omega":
  /// rho(z,z') = |zz'| / ((|z|+1)(|z'|+1)), rho(omega,z) = 1/(|z|+1).
  ExtendedMetricSpace rho;
  /// Largest entrywise gap between rho and e^{-(x|y)_o} evaluated at cone
  /// points (z, 2^-k) with (z0, 2^k) standing in for omega, k = 0..levels-1.
  std::vector<double> gaps;
  /// max_k gaps[k] 2^k
  double fitted_c = 0.0;
};

BoundaryMetric boundary_metric(const ExtendedMetricSpace& z, std::size_t z0,
                               std::size_t levels = 9);

/// Involution of the boundary metric at omega, restricted to Z. Equals the
/// metric of Z.
ExtendedMetricSpace recovered_involution(const ExtendedMetricSpace& z, std::size_t z0);

struct BusemannResult {
  /// |x w_i| - |w_i o| at i = i_max, w_i = (z0, i).
  double value = 0.0;
  /// (w_i|o)_x - (w_i|x)_o at the same i.
  double formula_value = 0.0;
  /// |value(i_max) - value(i_max / 2)|
  double tail_residual = 0.0;
  /// (i, value(i)) at powers of two up to i_max.
  std::vector<std::pair<std::uint64_t, double>> trace;
};

BusemannResult busemann_approx(const ConePoint& x, const ConeSpace& cone, std::uint64_t i_max);

enum class SequenceClass { cauchy_shrinking, escaping, divergent, inconclusive };

const char* to_string(SequenceClass c);

/// Thresholds for classify_sequence. All scale with D = diam(Z).
struct ClassifyOptions {
  double tail_fraction = 0.5;
  double base_tolerance = 1e-6;  ///< tail base diameter <= this * D
  double growth_factor = 10.0;   ///< escaping once |z| + h exceeds this * D
  double shrink_factor = 4.0;    ///< last height <= first-half max height / this
  double product_margin = 1.0;   ///< Gromov-product growth below this is "bounded"
};

/// Heuristic reading of a finite prefix against the two ways a cone
/// sequence can converge at infinity: Cauchy bases with heights to 0, or
/// |z_i| + h_i to infinity. Needs at least 8 points.
SequenceClass classify_sequence(std::span<const ConePoint> points, const ConeSpace& cone,
                                const ClassifyOptions& opts = {});

}  // namespace hpt
