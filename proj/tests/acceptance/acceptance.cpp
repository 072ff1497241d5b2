// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hpt/comparison.hpp"
#include "hpt/cone.hpp"
#include "hpt/generate.hpp"
#include "hpt/hyperbolicity.hpp"
#include "hpt/moebius.hpp"

using namespace hpt;

namespace {

// Independent oracle value for strip(1, 10) at kappa = -1.
constexpr double kStrip10 = 7.385101212467003;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Gate {
 public:
  void run(int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %-34s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
    std::fflush(stdout);
    failed_ += o.pass ? 0 : 1;
  }
  [[nodiscard]] int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

ExtendedMetricSpace convex_hyperbolic(std::size_t n, double r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(n);
  for (auto& t : theta) t = rng.uniform(0, 2 * std::numbers::pi);
  std::sort(theta.begin(), theta.end());
  std::vector<PolarPoint> pts;
  for (double t : theta) pts.push_back({r, t});
  return hyperbolic_space(pts, -1);
}

std::vector<ExtendedMetricSpace> random_spaces() {
  std::vector<ExtendedMetricSpace> out;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) out.push_back(random_metric(8, 1, 10, seed));
  return out;
}

Outcome euclidean_ptolemy() {
  const auto start = std::chrono::steady_clock::now();
  double worst = -1;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) worst = std::max(worst, ptolemy_defect(euclidean(2, 20, 1, seed)).defect);
  double equality = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::vector<double> pos(12);
    for (auto& p : pos) p = rng.uniform(-5, 5);
    equality = std::max(equality, std::abs(ptolemy_defect(line_positions(pos)).defect));
    equality = std::max(equality, std::abs(ptolemy_defect(circle(12, 1.5, seed)).defect));
  }
  const double t = seconds_since(start);
  return {worst <= 1e-9 && equality <= 1e-12 && t < 2.0,
          fmt("max defect %.3g, |equality| %.3g, %.2fs", worst, equality, t)};
}

Outcome hyperbolic_pt() {
  double worst = -1;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) worst = std::max(worst, pt_kappa_defect(hyperboloid(-1, 15, 2, seed), -1).defect);
  return {worst <= 1e-9, fmt("max PT_-1 defect %.3g", worst)};
}

std::vector<ConeSpace> criterion_cones() {
  std::vector<ConeSpace> out;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto z = euclidean(2, 12, 1, seed);
    out.push_back(build_cone(z, geometric_heights(diameter(z), 6)));
  }
  return out;
}

Outcome cone_constant() {
  const auto start = std::chrono::steady_clock::now();
  double worst = -INFINITY;
  std::uint64_t scanned = 0;
  for (const auto& c : criterion_cones()) {
    const auto a = apt_defect(c.materialize(), -1, {8});
    worst = std::max(worst, a.exp.defect);
    scanned = a.exp.scanned;
  }
  const double t = seconds_since(start);
  return {worst <= 4 + 1e-6 && t < 30 && scanned == 1028790,
          fmt("max exp_defect %.6f over 72-point cones, %.2fs", worst, t)};
}

Outcome flat_strip() {
  const double a = apt_defect(strip(1, 5), -1).exp.defect;
  const double b = apt_defect(strip(1, 10), -1).exp.defect;
  const double c = apt_defect(strip(1, 20), -1).exp.defect;
  return {a < b && b < c && b > 4 && std::abs(b - kStrip10) <= 0.1,
          fmt("t=5,10,20: %.4f %.4f %.4f", a, b, c)};
}

Outcome boundary_recovery() {
  double err = 0;
  double worst_ratio = 0;
  bool monotone = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto z = euclidean(2, 10, 1, seed);
    const auto back = recovered_involution(z, 0);
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = 0; j < z.size(); ++j) err = std::max(err, std::abs(back.at(i, j).value() - z.at(i, j).value()));
    const auto b = boundary_metric(z, 0, 9);
    for (std::size_t k = 0; k < b.gaps.size(); ++k) {
      if (k > 0 && b.gaps[k] > b.gaps[k - 1]) monotone = false;
      worst_ratio = std::max(worst_ratio, b.gaps[k] / (b.fitted_c * std::ldexp(1.0, -static_cast<int>(k))));
    }
  }
  return {err <= 1e-12 && monotone && worst_ratio <= 1 + 1e-12,
          fmt("max |recovered - Z| %.3g, gap/(C 2^-k) <= %.6f, monotone %.0f", err, worst_ratio, monotone)};
}

Outcome boundary_pt0() {
  double worst = -INFINITY;
  bool valid = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = boundary_metric(euclidean(2, 10, 1, seed), 0);
    valid = valid && validate(b.rho).ok;
    worst = std::max(worst, ptolemy_defect(b.rho).defect);
  }
  return {valid && worst <= 1e-9, fmt("rho_o valid %.0f, max Ptolemy defect %.3g", valid, worst)};
}

Outcome hyperbolicity_chain(const std::vector<ExtendedMetricSpace>& xs) {
  double margin = INFINITY;
  for (const auto& x : xs) {
    const double bound = hyperbolicity_bound_from_apt(std::max(0.0, apt_defect(x, -1).exp.defect));
    margin = std::min(margin, bound + 1e-9 - gromov_delta(x).defect);
  }
  return {margin >= 0, fmt("min (bound - delta) %.4f", margin)};
}

Outcome kappa_monotonicity(const std::vector<ExtendedMetricSpace>& xs) {
  double mono = INFINITY;
  double scaling = 0;
  double scaling_dual = 0;
  for (const auto& x : xs) {
    const double d2 = apt_defect(x, -2).exp.defect;
    const double d1 = apt_defect(x, -1).exp.defect;
    mono = std::min(mono, std::pow(std::max(0.0, d2), std::sqrt(0.5)) + 1e-9 - std::max(0.0, d1));
    scaling = std::max(scaling, std::abs(apt_defect(scale(x, std::sqrt(2.0)), -1).exp.defect - d2));
    scaling_dual = std::max(scaling_dual, std::abs(apt_defect(scale(x, 1 / std::sqrt(2.0)), -2).exp.defect - d1));
  }
  return {mono >= 0 && scaling <= 1e-9 && scaling_dual <= 1e-9,
          fmt("min monotonicity margin %.4f, scaling law %.3g / %.3g", mono, scaling, scaling_dual)};
}

Outcome moebius_invariance() {
  double disc = 0;
  bool valid = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = euclidean(2, 10, 1, seed);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto inv = involute(x, i);
      valid = valid && inv.validation.ok;
      disc = std::max(disc, moebius_equivalent(x, inv.space).max_discrepancy);
    }
  }
  const auto cycle = graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  const auto bad = involute(cycle, 3).validation;
  const bool violation = !bad.ok && bad.violations.front().kind == ViolationKind::triangle;
  return {valid && disc <= 1e-9 && violation,
          fmt("involutions valid %.0f, max crt discrepancy %.3g, 4-cycle violation %.0f", valid, disc, violation)};
}

Outcome ascat_bounds_sn() {
  std::vector<ExtendedMetricSpace> xs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    xs.push_back(random_metric(8, 1, 10, seed));
    xs.push_back(euclidean(2, 8, 3, seed));
    xs.push_back(hyperboloid(-1, 8, 2, seed));
    xs.push_back(circle(8, 2, seed));
  }
  xs.push_back(line(6));
  xs.push_back(graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}));
  for (double t : {5.0, 10.0, 20.0}) xs.push_back(strip(1, t));
  {
    const auto z = euclidean(2, 3, 1, 2);
    xs.push_back(build_cone(z, geometric_heights(diameter(z), 3)).materialize());
  }
  double margin = INFINITY;
  for (const auto& x : xs) {
    for (double k : {-1.0, -2.0}) {
      const double sn = apt_defect(x, k).sn.defect;
      const double asc = ascat_defect(x, k).cert.defect;
      margin = std::min(margin, std::max(0.0, asc) / std::sqrt(-k) + 1e-9 - sn);
    }
  }
  double convex = -INFINITY;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) convex = std::max(convex, ascat_defect(convex_hyperbolic(10, 2, seed), -1).cert.defect);
  return {margin >= 0 && convex <= 1e-6, fmt("min margin %.4g, convex ascat %.3g", margin, convex)};
}

Outcome gromov_product_identity() {
  double worst = 0;
  auto cones = criterion_cones();
  cones.push_back(build_cone(line(3), geometric_heights(2, 8)));
  for (const auto& c : cones)
    for (const auto& p : c.points())
      for (const auto& q : c.points()) worst = std::max(worst, std::abs(cone_gromov_product(p, q, c) - cone_gromov_product_halfsum(p, q, c)));

  const auto z = euclidean(2, 10, 1, 1);
  const ConeSpace c(z, {}, 0);
  double exact = 0;
  for (double h : {0.1, 0.5, 1.0, 2.0, 37.0}) {
    for (std::uint64_t i : {std::uint64_t(64), std::uint64_t(1) << 10, std::uint64_t(1) << 20}) {
      if (static_cast<double>(i) < std::max(h, 1.0)) continue;
      exact = std::max(exact, std::abs(busemann_approx({0, h}, c, i).value + std::log(h)));
    }
  }
  double formula = 0;
  for (std::size_t b = 1; b < z.size(); ++b) {
    const auto r = busemann_approx({b, 0.3 * static_cast<double>(b)}, c, std::uint64_t(1) << 20);
    formula = std::max(formula, std::abs(r.value - r.formula_value));
  }
  return {worst <= 1e-12 && exact <= 1e-12 && formula <= 1e-9,
          fmt("closed vs half-sum %.3g, busemann vs -log h %.3g, limit vs formula %.3g", worst, exact, formula)};
}

}  // namespace

int main() {
  Gate gate;
  const auto xs = random_spaces();
  gate.run(1, "Euclidean Ptolemy", euclidean_ptolemy);
  gate.run(2, "Hyperbolic PT_-1", hyperbolic_pt);
  gate.run(3, "Cone constant", cone_constant);
  gate.run(4, "Flat strip unboundedness", flat_strip);
  gate.run(5, "Boundary recovery", boundary_recovery);
  gate.run(6, "Boundary metric is PT_0", boundary_pt0);
  gate.run(7, "Hyperbolicity chain", [&] { return hyperbolicity_chain(xs); });
  gate.run(8, "Kappa monotonicity", [&] { return kappa_monotonicity(xs); });
  gate.run(9, "Moebius invariance", moebius_invariance);
  gate.run(10, "ascat bounds sn defect", ascat_bounds_sn);
  gate.run(11, "Cone Gromov product identity", gromov_product_identity);
  std::printf("%d of 11 criteria failed\n", gate.failed());
  return gate.failed() == 0 ? 0 : 1;
}
