#include "hpt/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hpt {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ExtendedMetricSpace::ExtendedMetricSpace(std::vector<std::string> labels,
                                         std::vector<Distance> dist,
                                         std::optional<std::size_t> omega)
    : labels_(std::move(labels)), dist_(std::move(dist)), omega_(omega) {
  const std::size_t n = labels_.size();
  if (dist_.size() != n * n) {
    throw Error("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                std::to_string(n) + "x" + std::to_string(n));
  }
  if (omega_ && *omega_ >= n) throw Error("omega index out of range");
}

ExtendedMetricSpace ExtendedMetricSpace::from_rows(const std::vector<std::vector<double>>& rows,
                                                   std::vector<std::string> labels,
                                                   std::optional<std::size_t> omega) {
  const std::size_t n = rows.size();
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw Error("label count does not match matrix size");
  std::vector<Distance> dist;
  dist.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error("distance matrix is not square");
    for (double v : row) {
      dist.push_back(v == kInf ? Distance::infinity() : Distance::finite(v));
    }
  }
  return ExtendedMetricSpace(std::move(labels), std::move(dist), omega);
}

DenseMatrix ExtendedMetricSpace::finite_part() const {
  DenseMatrix m;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!is_omega(i)) m.original.push_back(i);
  }
  m.n = m.original.size();
  m.d.resize(m.n * m.n);
  for (std::size_t a = 0; a < m.n; ++a) {
    for (std::size_t b = 0; b < m.n; ++b) {
      const Distance v = at(m.original[a], m.original[b]);
      if (v.is_infinite()) throw Error("infinite distance between non-omega points");
      m.d[a * m.n + b] = v.value();
    }
  }
  return m;
}

ExtendedMetricSpace ExtendedMetricSpace::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = size();
  if (perm.size() != n) throw Error("permutation size mismatch");
  std::vector<std::string> labels(n);
  std::vector<Distance> dist(n * n);
  std::optional<std::size_t> omega;
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = labels_.at(perm[a]);
    if (is_omega(perm[a])) omega = a;
    for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = at(perm[a], perm[b]);
  }
  return ExtendedMetricSpace(std::move(labels), std::move(dist), omega);
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::asymmetric: return "asymmetric";
    case ViolationKind::nonzero_diagonal: return "nonzero_diagonal";
    case ViolationKind::zero_distance: return "zero_distance";
    case ViolationKind::omega_rule: return "omega_rule";
    case ViolationKind::triangle: return "triangle";
  }
  return "unknown";
}

ValidationReport validate(const ExtendedMetricSpace& space, int workers) {
  const std::size_t n = space.size();
  std::vector<Violation> out;

  for (std::size_t i = 0; i < n; ++i) {
    const Distance d = space.at(i, i);
    if (d.is_infinite() || d.value() != 0.0) {
      out.push_back({ViolationKind::nonzero_diagonal, {i}, d.is_infinite() ? kInf : d.value()});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Distance a = space.at(i, j);
      const Distance b = space.at(j, i);
      if (a.is_infinite() != b.is_infinite()) {
        out.push_back({ViolationKind::asymmetric, {i, j}, kInf});
      } else if (a.is_finite()) {
        const double diff = std::abs(a.value() - b.value());
        if (diff > 1e-12 * std::max(a.value(), b.value())) {
          out.push_back({ViolationKind::asymmetric, {i, j}, diff});
        }
      }

      const bool touches_omega = space.is_omega(i) || space.is_omega(j);
      if (touches_omega != a.is_infinite()) {
        out.push_back({ViolationKind::omega_rule, {i, j}, kInf});
      } else if (!touches_omega && a.value() == 0.0) {
        out.push_back({ViolationKind::zero_distance, {i, j}, 0.0});
      }
    }
  }

  // Triangle scan over finite entries only; misplaced infinities were
  // already reported above.
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < n; ++i) {
    if (!space.is_omega(i)) pts.push_back(i);
  }
  const auto m = static_cast<std::ptrdiff_t>(pts.size());
  auto finite = [&](std::size_t i, std::size_t j, double& v) {
    const Distance d = space.at(i, j);
    if (d.is_infinite()) return false;
    v = d.value();
    return true;
  };

  std::vector<Violation> triangles;
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
#else
  (void)workers;
#endif
  {
    std::vector<Violation> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::ptrdiff_t ia = 0; ia < m; ++ia) {
      const std::size_t a = pts[static_cast<std::size_t>(ia)];
      for (std::size_t ib = static_cast<std::size_t>(ia) + 1; ib < pts.size(); ++ib) {
        const std::size_t b = pts[ib];
        double dab = 0.0;
        if (!finite(a, b, dab)) continue;
        for (std::size_t c : pts) {
          if (c == a || c == b) continue;
          double dac = 0.0, dcb = 0.0;
          if (!finite(a, c, dac) || !finite(c, b, dcb)) continue;
          const double rhs = dac + dcb;
          if (dab > rhs + kTriangleSlack * rhs) {
            local.push_back({ViolationKind::triangle, {a, b, c}, dab - rhs});
          }
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    triangles.insert(triangles.end(), local.begin(), local.end());
  }
  out.insert(out.end(), triangles.begin(), triangles.end());

  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    if (x.witness != y.witness) return x.witness < y.witness;
    return x.kind < y.kind;
  });
  return {out.empty(), std::move(out)};
}

ExtendedMetricSpace restrict_omega(const ExtendedMetricSpace& space) {
  if (!space.has_omega()) throw Error("space has no point at infinity");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!space.is_omega(i)) keep.push_back(i);
  }
  std::vector<std::string> labels;
  std::vector<Distance> dist;
  for (std::size_t a : keep) {
    labels.push_back(space.label(a));
    for (std::size_t b : keep) dist.push_back(space.at(a, b));
  }
  return ExtendedMetricSpace(std::move(labels), std::move(dist));
}

ExtendedMetricSpace scale(const ExtendedMetricSpace& space, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("scale factor must be positive");
  const std::size_t n = space.size();
  std::vector<Distance> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Distance d = space.at(i, j);
      dist[i * n + j] = d.is_infinite() ? d : Distance::finite(lambda * d.value());
    }
  }
  return ExtendedMetricSpace(space.labels(), std::move(dist), space.omega());
}

ExtendedMetricSpace snowflake(const ExtendedMetricSpace& space, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error("snowflake exponent must lie in (0, 1]");
  if (space.has_omega()) throw Error("snowflake applies to spaces without omega");
  const std::size_t n = space.size();
  std::vector<Distance> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = space.at(i, j).value();
      dist[i * n + j] = Distance::finite(eps == 1.0 ? v : std::pow(v, eps));
    }
  }
  return ExtendedMetricSpace(space.labels(), std::move(dist));
}

double diameter(const ExtendedMetricSpace& space) {
  double best = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.is_omega(i)) continue;
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (space.is_omega(j)) continue;
      best = std::max(best, space.at(i, j).value());
    }
  }
  return best;
}

}  // namespace hpt
