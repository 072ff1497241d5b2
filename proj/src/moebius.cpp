#include "hpt/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hpt {

namespace {

constexpr double kNoCandidate = -std::numeric_limits<double>::infinity();
constexpr double kEquivalenceTolerance = 1e-9;

std::size_t pairing_slot(std::string_view pairing) {
  for (std::size_t s = 0; s < kPairings.size(); ++s) {
    if (pairing == kPairings[s]) return s;
  }
  throw Error("unknown pairing '" + std::string(pairing) + "'");
}

// Residual with slot s on the left. A zero left product cannot violate.
double normalized_residual(const std::array<double, 3>& p, std::size_t s) {
  const double others = p[(s + 1) % 3] + p[(s + 2) % 3];
  if (p[s] == 0.0) return others == 0.0 ? 0.0 : kNoCandidate;
  return (p[s] - others) / p[s];
}

// Dense proxy for the Ptolemy scan: distances to omega are replaced by 1,
// which is exactly the one-infinity cross-ratio rule since a 4-subset
// contains omega at most once.
DenseMatrix ptolemy_proxy(const ExtendedMetricSpace& space) {
  DenseMatrix m;
  m.n = space.size();
  m.d.resize(m.n * m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    m.original.push_back(i);
    for (std::size_t j = 0; j < m.n; ++j) {
      const Distance v = space.at(i, j);
      if (i == j) {
        m.d[i * m.n + j] = 0.0;
      } else if (space.is_omega(i) || space.is_omega(j)) {
        m.d[i * m.n + j] = 1.0;
      } else {
        m.d[i * m.n + j] = v.value();
      }
    }
  }
  return m;
}

std::array<double, 3> opposite_products(const DenseMatrix& m, const Quad& q) {
  std::array<double, 3> p{};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& [u, v] = kPairingIndices[s];
    p[s] = m(q[u[0]], q[u[1]]) * m(q[v[0]], q[v[1]]);
  }
  return p;
}

double triple_discrepancy(const CrossRatioTriple& x, const CrossRatioTriple& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c)});
}

}  // namespace

bool admissible(const Quad& quad) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::count(quad.begin(), quad.end(), quad[i]) >= 3) return false;
  }
  return true;
}

CrossRatioTriple crt(const ExtendedMetricSpace& space, const Quad& q) {
  for (std::size_t i : q) {
    if (i >= space.size()) throw Error("quadruple index out of range");
  }
  if (!admissible(q)) throw Error("quadruple is not admissible");

  const auto omega_count = std::count_if(q.begin(), q.end(), [&](std::size_t i) { return space.is_omega(i); });
  // Products in crt order: (xy)(zw), (xz)(yw), (xw)(yz).
  static constexpr std::array<std::array<std::array<int, 2>, 2>, 3> kCrtPairs{{
      {{{0, 1}, {2, 3}}},
      {{{0, 2}, {1, 3}}},
      {{{0, 3}, {1, 2}}},
  }};
  std::array<double, 3> p{};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& [u, v] = kCrtPairs[s];
    const std::size_t a = q[u[0]], b = q[u[1]], c = q[v[0]], d = q[v[1]];
    if (omega_count == 2) {
      // The product pairing omega with itself is 0 * finite; the other two
      // are inf * inf and compare as equal.
      const bool self_paired = (space.is_omega(a) && space.is_omega(b)) ||
                               (space.is_omega(c) && space.is_omega(d));
      p[s] = self_paired ? 0.0 : 1.0;
      continue;
    }
    auto factor = [&](std::size_t x, std::size_t y) {
      if (x != y && (space.is_omega(x) || space.is_omega(y))) return 1.0;
      return space.at(x, y).value();
    };
    p[s] = factor(a, b) * factor(c, d);
  }
  const double top = std::max({p[0], p[1], p[2]});
  if (!(top > 0.0)) throw Error("cross-ratio triple is (0:0:0); points are not separated");
  return {p[0] / top, p[1] / top, p[2] / top};
}

bool in_delta(const CrossRatioTriple& t) {
  constexpr double slack = 1e-12;
  return t.a <= t.b + t.c + slack && t.b <= t.a + t.c + slack && t.c <= t.a + t.b + slack;
}

// Only 4-subsets of distinct points are scanned. With a repeated point the
// three products are {0, P, P} (x=y type) or {P, 0, P} and so on: the left
// side is either 0 or equals one of the right-hand terms, so every
// degenerate labelling holds non-strictly and cannot raise the maximum.
Certificate ptolemy_defect(const ExtendedMetricSpace& space, const ScanOptions& opts) {
  if (space.size() < 4) throw Error("Ptolemy defect needs at least 4 points");
  Stopwatch clock;
  const DenseMatrix m = ptolemy_proxy(space);
  auto eval = [&m](const Quad& q) {
    const auto p = opposite_products(m, q);
    return std::array<double, 3>{normalized_residual(p, 0), normalized_residual(p, 1),
                                 normalized_residual(p, 2)};
  };
  const auto r = scan_quadruples<3>(m.n, eval, opts);
  return make_certificate(r, m, kPairings, 0.0, clock.seconds());
}

double ptolemy_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing) {
  const DenseMatrix m = ptolemy_proxy(space);
  return normalized_residual(opposite_products(m, quad), pairing_slot(pairing));
}

EquivalenceResult moebius_equivalent(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b,
                                     const ScanOptions& opts) {
  if (a.size() != b.size()) throw Error("Moebius comparison needs spaces of equal size");
  const std::size_t n = a.size();
  EquivalenceResult out;

  auto consider = [&](const Quad& q) {
    const double diff = triple_discrepancy(crt(a, q), crt(b, q));
    if (!out.witness || diff > out.max_discrepancy) {
      out.max_discrepancy = diff;
      out.witness = q;
    }
  };

  // Multisets with repeats: {x,x,y,y} and {x,x,y,z}.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      if (x < y) consider({x, x, y, y});
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z != x) consider({x, x, y, z});
      }
    }
  }

  auto eval = [&](const Quad& q) {
    return std::array<double, 1>{triple_discrepancy(crt(a, q), crt(b, q))};
  };
  const auto r = scan_quadruples<1>(n, eval, opts);
  if (r.found && (!out.witness || r.best > out.max_discrepancy)) {
    out.max_discrepancy = r.best;
    out.witness = r.quad;
  }
  out.equivalent = out.max_discrepancy <= kEquivalenceTolerance;
  return out;
}

InvolutionResult involute(const ExtendedMetricSpace& space, std::size_t k) {
  const std::size_t n = space.size();
  if (k >= n) throw Error("involution point out of range");
  if (space.is_omega(k)) return {space, validate(space)};

  const auto old = space.omega();
  for (std::size_t z = 0; z < n; ++z) {
    if (z == k || space.is_omega(z)) continue;
    if (space.at(k, z).value() == 0.0) {
      throw Error("involution point is at distance 0 from point " + std::to_string(z));
    }
  }

  std::vector<Distance> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Distance v;
      if (i == j) {
        v = Distance::finite(0.0);
      } else if (i == k || j == k) {
        v = Distance::infinity();
      } else if (old && (i == *old || j == *old)) {
        const std::size_t z = (i == *old) ? j : i;
        v = Distance::finite(1.0 / space.at(k, z).value());
      } else {
        v = Distance::finite(space.at(i, j).value() /
                             (space.at(k, i).value() * space.at(k, j).value()));
      }
      dist[i * n + j] = v;
    }
  }
  ExtendedMetricSpace out(space.labels(), std::move(dist), k);
  auto report = validate(out);
  return {std::move(out), std::move(report)};
}

HomothetyResult homothety_ratio(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b) {
  if (a.size() != b.size()) throw Error("homothety needs spaces of equal size");
  if (a.omega() != b.omega()) throw Error("homothety needs the same point at infinity");

  struct Ratio {
    double r;
    std::size_t i, j;
  };
  std::vector<Ratio> ratios;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_omega(i)) continue;
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a.is_omega(j)) continue;
      const double da = a.at(i, j).value();
      if (da == 0.0) throw Error("homothety needs separated points");
      ratios.push_back({b.at(i, j).value() / da, i, j});
    }
  }
  HomothetyResult out;
  if (ratios.empty()) {
    out.ok = true;
    out.lambda = 1.0;
    return out;
  }
  std::vector<double> sorted;
  for (const auto& r : ratios) sorted.push_back(r.r);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  out.lambda = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  out.worst = {ratios.front().i, ratios.front().j};
  out.worst_relative = -1.0;
  for (const auto& r : ratios) {
    const double rel = std::abs(r.r / out.lambda - 1.0);
    if (rel > out.worst_relative) {
      out.worst_relative = rel;
      out.worst = {r.i, r.j};
    }
  }
  out.ok = out.lambda > 0.0 && out.worst_relative <= 1e-9;
  return out;
}

}  // namespace hpt
