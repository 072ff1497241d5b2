#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hpt/metric_space.hpp"

namespace hpt {

/// Derives an independent 64-bit seed for stream `stream` (splitmix64).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with platform-independent uniform doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// "kind:key=value,key=value" plus a seed. Values stay strings until the
/// generator reads them.
struct GeneratorSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;

  static GeneratorSpec parse(const std::string& text, std::uint64_t seed = 0);
  [[nodiscard]] std::string to_string() const;
};

/// Dispatches on spec.kind: euclidean, hyperboloid, graph, line, strip,
/// random_metric, circle. Deterministic per seed.
ExtendedMetricSpace generate(const GeneratorSpec& spec);

/// Polar coordinates (distance from the origin, angle) in M^2_kappa.
struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// Distance between polar points of the model plane of curvature kappa < 0.
double hyperbolic_polar_distance(PolarPoint p, PolarPoint q, double kappa);

ExtendedMetricSpace line(std::size_t n);
ExtendedMetricSpace line_positions(const std::vector<double>& positions);
ExtendedMetricSpace strip(double width, double length);
ExtendedMetricSpace euclidean_space(const std::vector<std::vector<double>>& points);
std::vector<std::vector<double>> euclidean_points(std::size_t dim, std::size_t n, double box,
                                                  std::uint64_t seed);
ExtendedMetricSpace euclidean(std::size_t dim, std::size_t n, double box, std::uint64_t seed);
/// n points on a circle of the given radius at random angles (concyclic).
ExtendedMetricSpace circle(std::size_t n, double radius, std::uint64_t seed);
/// Area-uniform sample of the disk of given radius around the origin.
std::vector<PolarPoint> hyperboloid_points(double kappa, std::size_t n, double radius,
                                           std::uint64_t seed);
ExtendedMetricSpace hyperbolic_space(const std::vector<PolarPoint>& points, double kappa);
ExtendedMetricSpace hyperboloid(double kappa, std::size_t n, double radius, std::uint64_t seed);

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 1.0;
};
/// Shortest-path metric of a connected weighted graph.
ExtendedMetricSpace graph(std::size_t n, const std::vector<WeightedEdge>& edges);
/// Random symmetric matrix in [lo, hi] repaired to its shortest-path metric.
ExtendedMetricSpace random_metric(std::size_t n, double lo, double hi, std::uint64_t seed);

}  // namespace hpt
