#include "hpt/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace hpt {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  // 53 random bits; std::uniform_real_distribution is not reproducible
  // across standard libraries.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

class Params {
 public:
  explicit Params(const GeneratorSpec& spec) : spec_(spec) {}

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
    used_.push_back(key);
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) {
      if (fallback) return *fallback;
      throw Error(spec_.kind + ": missing parameter '" + key + "'");
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size()) {
      throw Error(spec_.kind + ": parameter '" + key + "' is not a number: " + it->second);
    }
    return v;
  }

  std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) {
    const double v =
        real(key, fallback ? std::optional<double>(static_cast<double>(*fallback)) : std::nullopt);
    if (v < 0 || v != std::floor(v)) throw Error(spec_.kind + ": '" + key + "' must be a count");
    return static_cast<std::size_t>(v);
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    used_.push_back(key);
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) {
      if (fallback) return *fallback;
      throw Error(spec_.kind + ": missing parameter '" + key + "'");
    }
    return it->second;
  }

  bool has(const std::string& key) const { return spec_.params.count(key) > 0; }

  void finish() const {
    for (const auto& [key, value] : spec_.params) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw Error(spec_.kind + ": unknown parameter '" + key + "'");
      }
    }
  }

 private:
  const GeneratorSpec& spec_;
  std::vector<std::string> used_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

void require_points(std::size_t n) {
  if (n < 2) throw Error("generators need at least 2 points");
}

ExtendedMetricSpace from_dense(std::size_t n, const std::vector<double>& d) {
  std::vector<Distance> dist(n * n);
  for (std::size_t i = 0; i < n * n; ++i) dist[i] = Distance::finite(d[i]);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return ExtendedMetricSpace(std::move(labels), std::move(dist));
}

void floyd_warshall(std::size_t n, std::vector<double>& d) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d[i * n + k] + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.seed = seed;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind.empty()) throw Error("generator spec has no kind: '" + text + "'");
  if (colon == std::string::npos) return spec;
  for (const auto& item : split(text.substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error("generator parameter must be key=value: '" + item + "'");
    }
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::string out = kind;
  char sep = ':';
  for (const auto& [key, value] : params) {
    out += sep;
    out += key + "=" + value;
    sep = ',';
  }
  return out;
}

ExtendedMetricSpace line(std::size_t n) {
  require_points(n);
  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = static_cast<double>(i);
  return line_positions(pos);
}

ExtendedMetricSpace line_positions(const std::vector<double>& positions) {
  const std::size_t n = positions.size();
  require_points(n);
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(positions[i] - positions[j]);
  }
  return from_dense(n, d);
}

ExtendedMetricSpace strip(double width, double length) {
  if (!(width > 0.0)) throw Error("strip width must be positive");
  if (!(length > 0.0)) throw Error("strip length must be positive");
  // Corners of a width x length rectangle, labelled so that 12 and 34 are
  // the long sides and 13, 24 the diagonals.
  return euclidean_space({{0.0, 0.0}, {length, 0.0}, {length, width}, {0.0, width}});
}

ExtendedMetricSpace euclidean_space(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  require_points(n);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].size() != points[j].size()) throw Error("points differ in dimension");
      double s = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        const double t = points[i][k] - points[j][k];
        s += t * t;
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(s);
    }
  }
  return from_dense(n, d);
}

std::vector<std::vector<double>> euclidean_points(std::size_t dim, std::size_t n, double box,
                                                  std::uint64_t seed) {
  require_points(n);
  if (dim == 0) throw Error("euclidean dimension must be positive");
  if (!(box > 0.0)) throw Error("euclidean box must be positive");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    for (auto& x : p) x = rng.uniform(0.0, box);
  }
  return pts;
}

ExtendedMetricSpace euclidean(std::size_t dim, std::size_t n, double box, std::uint64_t seed) {
  return euclidean_space(euclidean_points(dim, n, box, seed));
}

ExtendedMetricSpace circle(std::size_t n, double radius, std::uint64_t seed) {
  require_points(n);
  if (!(radius > 0.0)) throw Error("circle radius must be positive");
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    pts.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return euclidean_space(pts);
}

double hyperbolic_polar_distance(PolarPoint p, PolarPoint q, double kappa) {
  if (!(kappa < 0.0)) throw Error("hyperbolic distance needs kappa < 0");
  const double k = std::sqrt(-kappa);
  // Half-angle form of the hyperbolic law of cosines; stable for close points.
  const double a = std::sinh(0.5 * k * (p.r - q.r));
  const double s = std::sin(0.5 * (p.theta - q.theta));
  const double h = a * a + std::sinh(k * p.r) * std::sinh(k * q.r) * s * s;
  return 2.0 / k * std::asinh(std::sqrt(std::max(h, 0.0)));
}

std::vector<PolarPoint> hyperboloid_points(double kappa, std::size_t n, double radius,
                                           std::uint64_t seed) {
  require_points(n);
  if (!(kappa < 0.0)) throw Error("hyperboloid needs kappa < 0");
  if (!(radius > 0.0)) throw Error("hyperboloid radius must be positive");
  const double k = std::sqrt(-kappa);
  const double area = std::cosh(k * radius) - 1.0;
  Rng rng(seed);
  std::vector<PolarPoint> pts(n);
  for (auto& p : pts) {
    p.r = std::acosh(1.0 + rng.uniform(0.0, 1.0) * area) / k;
    p.theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return pts;
}

ExtendedMetricSpace hyperbolic_space(const std::vector<PolarPoint>& points, double kappa) {
  const std::size_t n = points.size();
  require_points(n);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = hyperbolic_polar_distance(points[i], points[j], kappa);
    }
  }
  return from_dense(n, d);
}

ExtendedMetricSpace hyperboloid(double kappa, std::size_t n, double radius, std::uint64_t seed) {
  return hyperbolic_space(hyperboloid_points(kappa, n, radius, seed), kappa);
}

ExtendedMetricSpace graph(std::size_t n, const std::vector<WeightedEdge>& edges) {
  require_points(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw Error("graph edge endpoint out of range");
    if (e.a == e.b) continue;
    if (!(e.weight > 0.0)) throw Error("graph edge weights must be positive");
    d[e.a * n + e.b] = std::min(d[e.a * n + e.b], e.weight);
    d[e.b * n + e.a] = std::min(d[e.b * n + e.a], e.weight);
  }
  floyd_warshall(n, d);
  for (double v : d) {
    if (v == inf) throw Error("graph is not connected");
  }
  return from_dense(n, d);
}

ExtendedMetricSpace random_metric(std::size_t n, double lo, double hi, std::uint64_t seed) {
  require_points(n);
  if (!(lo > 0.0) || !(hi >= lo)) throw Error("random_metric needs 0 < lo <= hi");
  Rng rng(seed);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = rng.uniform(lo, hi);
  }
  floyd_warshall(n, d);
  return from_dense(n, d);
}

ExtendedMetricSpace generate(const GeneratorSpec& spec) {
  Params p(spec);
  ExtendedMetricSpace out;
  if (spec.kind == "line") {
    if (p.has("points")) {
      std::vector<double> pos;
      for (const auto& tok : split(p.text("points"), ';')) pos.push_back(std::stod(tok));
      out = line_positions(pos);
    } else {
      out = line(p.count("n"));
    }
  } else if (spec.kind == "strip") {
    out = strip(p.real("a"), p.real("t"));
  } else if (spec.kind == "euclidean") {
    out = euclidean(p.count("dim", 2), p.count("n"), p.real("box", 1.0), spec.seed);
  } else if (spec.kind == "circle") {
    out = circle(p.count("n"), p.real("radius", 1.0), spec.seed);
  } else if (spec.kind == "hyperboloid") {
    out = hyperboloid(p.real("kappa", -1.0), p.count("n"), p.real("radius", 2.0), spec.seed);
  } else if (spec.kind == "random_metric") {
    out = random_metric(p.count("n"), p.real("lo", 1.0), p.real("hi", 10.0), spec.seed);
  } else if (spec.kind == "graph") {
    const std::size_t n = p.count("n");
    std::vector<WeightedEdge> edges;
    for (const auto& tok : split(p.text("edges"), ';')) {
      if (tok.empty()) continue;
      WeightedEdge e;
      const auto dash = tok.find('-');
      const auto colon = tok.find(':');
      if (dash == std::string::npos) throw Error("graph edge must be a-b[:w]: '" + tok + "'");
      try {
        e.a = std::stoul(tok.substr(0, dash));
        e.b = std::stoul(tok.substr(dash + 1, colon == std::string::npos ? std::string::npos
                                                                          : colon - dash - 1));
        if (colon != std::string::npos) e.weight = std::stod(tok.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error("graph edge must be a-b[:w]: '" + tok + "'");
      }
      edges.push_back(e);
    }
    out = graph(n, edges);
  } else {
    throw Error("unknown generator kind '" + spec.kind + "'");
  }
  p.finish();
  return out;
}

}  // namespace hpt
