#include "hpt/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hpt/moebius.hpp"

namespace hpt {

double cone_distance(const ConePoint& p, const ConePoint& q, const ExtendedMetricSpace& z) {
  if (!(p.height > 0.0) || !(q.height > 0.0)) throw Error("cone heights must be positive");
  const double d = z.at(p.base, q.base).value();
  return 2.0 * std::log((d + std::max(p.height, q.height)) / std::sqrt(p.height * q.height));
}

ConeSpace::ConeSpace(ExtendedMetricSpace base, std::vector<ConePoint> points, std::size_t z0)
    : base_(std::move(base)), points_(std::move(points)), z0_(z0) {
  if (base_.has_omega()) throw Error("cone base must not contain omega");
  if (z0_ >= base_.size()) throw Error("cone base point out of range");
  for (const auto& p : points_) {
    if (p.base >= base_.size()) throw Error("cone point base out of range");
    if (!(p.height > 0.0) || !std::isfinite(p.height)) throw Error("cone heights must be positive");
  }
}

ExtendedMetricSpace ConeSpace::materialize() const {
  const std::size_t n = points_.size();
  std::vector<std::string> labels(n);
  std::vector<Distance> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "@%.17g", points_[i].height);
    labels[i] = base_.label(points_[i].base) + buf;
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = Distance::finite(i == j ? 0.0 : distance(i, j));
    }
  }
  return ExtendedMetricSpace(std::move(labels), std::move(dist));
}

std::vector<double> geometric_heights(double diam, std::size_t count) {
  if (!(diam > 0.0)) throw Error("geometric height grid needs a positive diameter");
  if (count == 0) throw Error("height grid is empty");
  std::vector<double> h(count);
  for (std::size_t k = 0; k < count; ++k) h[k] = std::ldexp(diam, -static_cast<int>(k));
  return h;
}

ConeSpace build_cone(const ExtendedMetricSpace& z, const std::vector<double>& heights,
                     bool truncate, std::size_t z0) {
  if (heights.empty()) throw Error("height grid is empty");
  for (std::size_t k = 0; k < heights.size(); ++k) {
    if (!(heights[k] > 0.0)) throw Error("cone heights must be positive");
    if (k > 0 && !(heights[k] < heights[k - 1])) throw Error("cone heights must be strictly descending");
  }
  if (truncate) {
    const double d = diameter(z);
    if (heights.front() > d) throw Error("truncated cone heights must not exceed diam(Z)");
  }
  std::vector<ConePoint> pts;
  pts.reserve(z.size() * heights.size());
  for (std::size_t b = 0; b < z.size(); ++b) {
    for (double h : heights) pts.push_back({b, h});
  }
  return ConeSpace(z, std::move(pts), z0);
}

double cone_gromov_product(const ConePoint& p, const ConePoint& q, const ConeSpace& cone) {
  const double zp = cone.base_norm(p.base);
  const double zq = cone.base_norm(q.base);
  const double d = cone.base().at(p.base, q.base).value();
  return std::log((zp + std::max(p.height, 1.0)) * (zq + std::max(q.height, 1.0)) /
                  (d + std::max(p.height, q.height)));
}

double cone_gromov_product_halfsum(const ConePoint& p, const ConePoint& q, const ConeSpace& cone) {
  const ConePoint o = cone.origin();
  return 0.5 * (cone.distance(o, p) + cone.distance(o, q) - cone.distance(p, q));
}

BoundaryMetric boundary_metric(const ExtendedMetricSpace& z, std::size_t z0, std::size_t levels) {
  if (z.has_omega()) throw Error("boundary metric needs a space without omega");
  if (z0 >= z.size()) throw Error("base point not in Z");
  const std::size_t n = z.size();
  const std::size_t w = n;  // index of omega in the result
  auto norm = [&](std::size_t i) { return z.at(i, z0).value(); };

  std::vector<std::vector<double>> rows(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) rows[i][j] = z.at(i, j).value() / ((norm(i) + 1.0) * (norm(j) + 1.0));
    }
    rows[i][w] = rows[w][i] = 1.0 / (norm(i) + 1.0);
  }
  std::vector<std::string> labels = z.labels();
  labels.push_back("omega");

  BoundaryMetric out{ExtendedMetricSpace::from_rows(rows, labels), {}, 0.0};

  const ConeSpace cone(z, {}, z0);
  for (std::size_t k = 0; k < levels; ++k) {
    const double low = std::ldexp(1.0, -static_cast<int>(k));
    const double tall = std::ldexp(1.0, static_cast<int>(k));
    auto sample = [&](std::size_t i) { return i == w ? ConePoint{z0, tall} : ConePoint{i, low}; };
    double gap = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        const double approx = std::exp(-cone_gromov_product_halfsum(sample(i), sample(j), cone));
        gap = std::max(gap, std::abs(approx - rows[i][j]));
      }
    }
    out.gaps.push_back(gap);
    out.fitted_c = std::max(out.fitted_c, gap * tall);
  }
  return out;
}

ExtendedMetricSpace recovered_involution(const ExtendedMetricSpace& z, std::size_t z0) {
  const BoundaryMetric b = boundary_metric(z, z0, 0);
  return restrict_omega(involute(b.rho, z.size()).space);
}

BusemannResult busemann_approx(const ConePoint& x, const ConeSpace& cone, std::uint64_t i_max) {
  if (i_max < 2) throw Error("busemann_approx needs i_max >= 2");
  const ConePoint o = cone.origin();
  auto value_at = [&](std::uint64_t i) {
    const ConePoint w{cone.z0(), static_cast<double>(i)};
    return cone.distance(x, w) - cone.distance(w, o);
  };
  BusemannResult out;
  for (std::uint64_t i = 1; i < i_max; i *= 2) out.trace.emplace_back(i, value_at(i));
  out.value = value_at(i_max);
  out.trace.emplace_back(i_max, out.value);
  out.tail_residual = std::abs(out.value - value_at(i_max / 2));

  const ConePoint w{cone.z0(), static_cast<double>(i_max)};
  const double w_o_at_x = 0.5 * (cone.distance(x, w) + cone.distance(x, o) - cone.distance(w, o));
  const double w_x_at_o = 0.5 * (cone.distance(o, w) + cone.distance(o, x) - cone.distance(w, x));
  out.formula_value = w_o_at_x - w_x_at_o;
  return out;
}

const char* to_string(SequenceClass c) {
  switch (c) {
    case SequenceClass::cauchy_shrinking: return "cauchy_shrinking";
    case SequenceClass::escaping: return "escaping";
    case SequenceClass::divergent: return "divergent";
    case SequenceClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

SequenceClass classify_sequence(std::span<const ConePoint> pts, const ConeSpace& cone,
                                const ClassifyOptions& opts) {
  const std::size_t n = pts.size();
  if (n < 8) throw Error("classify_sequence needs at least 8 points");
  const auto start = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - opts.tail_fraction)));
  if (start < 2 || start >= n - 1) throw Error("tail fraction leaves no head or tail");
  double diam = diameter(cone.base());
  if (diam == 0.0) diam = 1.0;
  const auto& z = cone.base();

  // Cauchy bases with heights shrinking to 0.
  double tail_base_diam = 0.0;
  bool heights_down = true;
  for (std::size_t i = start; i < n; ++i) {
    if (i > start && pts[i].height > pts[i - 1].height) heights_down = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      tail_base_diam = std::max(tail_base_diam, z.at(pts[i].base, pts[j].base).value());
    }
  }
  double head_height = 0.0;
  for (std::size_t i = 0; i < start; ++i) head_height = std::max(head_height, pts[i].height);
  if (tail_base_diam <= opts.base_tolerance * diam && heights_down &&
      pts[n - 1].height <= head_height / opts.shrink_factor) {
    return SequenceClass::cauchy_shrinking;
  }

  // |z_i| + h_i growing without bound.
  bool growing = true;
  for (std::size_t i = start + 1; i < n; ++i) {
    const double prev = cone.base_norm(pts[i - 1].base) + pts[i - 1].height;
    const double cur = cone.base_norm(pts[i].base) + pts[i].height;
    if (cur < prev) growing = false;
  }
  if (growing && cone.base_norm(pts[n - 1].base) + pts[n - 1].height > opts.growth_factor * diam) {
    return SequenceClass::escaping;
  }

  // Pairwise Gromov products that do not grow from head to tail.
  auto min_product = [&](std::size_t lo, std::size_t hi) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < hi; ++j) m = std::min(m, cone_gromov_product(pts[i], pts[j], cone));
    return m;
  };
  if (min_product(start, n) <= min_product(0, start) + opts.product_margin) {
    return SequenceClass::divergent;
  }
  return SequenceClass::inconclusive;
}

}  // namespace hpt
