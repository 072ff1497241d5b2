#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hpt/comparison.hpp"
#include "hpt/generate.hpp"
#include "hpt/hyperbolicity.hpp"
#include "oracles.hpp"

using namespace hpt;

namespace {

double euclid_angle(double a, double b, double c) { return std::acos((b * b + c * c - a * a) / (2 * b * c)); }

// Convex-position sample of M^2_{-1}: points on a circle of radius r
// around the origin, angles sorted.
ExtendedMetricSpace convex_sample(std::size_t n, double r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(n);
  for (auto& t : theta) t = rng.uniform(0, 2 * std::numbers::pi);
  std::sort(theta.begin(), theta.end());
  std::vector<PolarPoint> pts;
  for (double t : theta) pts.push_back({r, t});
  return hyperbolic_space(pts, -1);
}

QuadDistances quad_of(const ExtendedMetricSpace& x, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  auto at = [&](std::size_t i, std::size_t j) { return x.at(i, j).value(); };
  return {at(a, b), at(a, c), at(a, d), at(b, c), at(b, d), at(c, d)};
}

}  // namespace

TEST_CASE("model_distance") {
  const ModelPoint p{{1, 0, 0}};
  const ModelPoint q{{std::cosh(1.0), std::sinh(1.0), 0}};
  CHECK(model_distance(p, p, -1) == 0.0);
  CHECK(model_distance(p, q, -1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(model_distance(q, p, -1) == model_distance(p, q, -1));
  const ModelPoint off{{2, 0, 0}};
  CHECK_THROWS_AS(model_distance(p, off, -1), Error);
  CHECK_THROWS_AS(model_distance(p, q, 0), Error);
  const auto a = model_point(3.0, 0.4, -2);
  const auto b = model_point(1.5, 2.9, -2);
  const double k = std::sqrt(2.0);
  const double inner = -minkowski(a, b) * 2;  // cosh(k d)
  CHECK(model_distance(a, b, -2) == doctest::Approx(std::acosh(inner) / k).epsilon(1e-12));
  CHECK(std::abs(minkowski(a, a) + 0.5) <= 1e-10 * a.x[0] * a.x[0]);
}

TEST_CASE("embed_triangle") {
  CHECK(vertex_angle(1, 1, 1, -1) == doctest::Approx(0.9187978721780273).epsilon(1e-14));
  CHECK(vertex_angle(1, 1, 1, -1) == doctest::Approx(std::acos(std::cosh(1.0) * (std::cosh(1.0) - 1) / (std::sinh(1.0) * std::sinh(1.0)))).epsilon(1e-14));

  for (auto [a, b, c] : {std::array<double, 3>{1, 1, 1}, {2, 3, 4}, {0.5, 5, 5.2}, {7, 3, 4.5}}) {
    const auto t = embed_triangle(a, b, c, -1);
    CHECK(model_distance(t.p2, t.p3, -1) == doctest::Approx(a).epsilon(1e-10));
    CHECK(model_distance(t.p1, t.p3, -1) == doctest::Approx(b).epsilon(1e-10));
    CHECK(model_distance(t.p1, t.p2, -1) == doctest::Approx(c).epsilon(1e-10));
    CHECK(t.p3.x[2] >= 0);
  }
  // Degenerate: a = b + c puts p1 between p2 and p3.
  CHECK(vertex_angle(3, 1, 2, -1) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(vertex_angle(1, 3, 2, -1) == 0.0);
  const auto flat = embed_triangle(1, 3, 2, -1);
  CHECK(std::abs(flat.p3.x[2]) <= 1e-12);

  const double s = 0.01;
  for (auto [a, b, c] : {std::array<double, 3>{3, 4, 5}, {1, 1, 1}, {2, 2.5, 4}}) {
    CHECK(std::abs(vertex_angle(s * a, s * b, s * c, -1) - euclid_angle(a, b, c)) <= 1e-3);
  }
  CHECK_THROWS_AS(embed_triangle(5, 1, 1, -1), Error);
}

TEST_CASE("comparison_quadrilateral") {
  const auto sq = euclidean_space({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto near_flat = comparison_quadrilateral(quad_of(sq, 0, 1, 2, 3), -1e-4);
  CHECK(std::abs(near_flat.diagonal24 - std::sqrt(2.0)) <= 1e-3);

  // Labelling (0,2,1,3) of line(4) embeds 0-1 and compares 2-3.
  const auto l = line(4);
  const auto coll = comparison_quadrilateral(quad_of(l, 0, 2, 1, 3), -1);
  CHECK(coll.diagonal24 == doctest::Approx(1.0).epsilon(1e-12));

  const auto x = convex_sample(4, 1.5, 3);
  const auto q = comparison_quadrilateral(quad_of(x, 0, 1, 2, 3), -1);
  const QuadDistances d = quad_of(x, 0, 1, 2, 3);
  CHECK(model_distance(q.p[0], q.p[1], -1) == doctest::Approx(d.d12).epsilon(1e-9));
  CHECK(model_distance(q.p[1], q.p[2], -1) == doctest::Approx(d.d23).epsilon(1e-9));
  CHECK(model_distance(q.p[2], q.p[3], -1) == doctest::Approx(d.d34).epsilon(1e-9));
  CHECK(model_distance(q.p[3], q.p[0], -1) == doctest::Approx(d.d14).epsilon(1e-9));
  CHECK(model_distance(q.p[0], q.p[2], -1) == doctest::Approx(d.d13).epsilon(1e-9));
  CHECK(model_distance(q.p[1], q.p[3], -1) == doctest::Approx(d.d24).epsilon(1e-9));
  CHECK(q.diagonal24 == doctest::Approx(model_distance(q.p[1], q.p[3], -1)).epsilon(1e-10));
}

TEST_CASE("reflection leaves the compared diagonal unchanged") {
  const auto x = random_metric(6, 1, 3, 8);
  const auto q = comparison_quadrilateral(quad_of(x, 0, 1, 2, 3), -1);
  auto mirror = [](ModelPoint p) {
    p.x[2] = -p.x[2];
    return p;
  };
  CHECK(std::abs(model_distance(mirror(q.p[1]), mirror(q.p[3]), -1) - model_distance(q.p[1], q.p[3], -1)) <= 1e-12);
}

TEST_CASE("kappa -> 0 continuity") {
  const auto x = euclidean(2, 4, 1, 6);
  const QuadDistances d = quad_of(x, 0, 1, 2, 3);
  const double a2 = euclid_angle(d.d23, d.d12, d.d13);
  const double a4 = euclid_angle(d.d34, d.d14, d.d13);
  const double flat = std::sqrt(d.d12 * d.d12 + d.d14 * d.d14 - 2 * d.d12 * d.d14 * std::cos(a2 + a4));
  CHECK(std::abs(comparison_quadrilateral(d, -1e-6).diagonal24 - flat) <= 1e-3);
}

TEST_CASE("ascat_defect examples") {
  const auto convex = ascat_defect(convex_sample(10, 2, 1), -1);
  CHECK(convex.cert.defect <= 1e-6);
  CHECK(ascat_defect(line(4), -1).cert.defect <= 0.0);
  const auto s = ascat_defect(strip(1, 10), -1);
  CHECK(s.cert.defect > 0);
  CHECK(s.non_embeddable.empty());
  CHECK_THROWS_AS(ascat_defect(line(4), 0), Error);
}

TEST_CASE("ascat_defect matches the oracle; witness and side residuals") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (const auto& x : {random_metric(7, 1, 10, seed), euclidean(2, 7, 2, seed), hyperboloid(-1, 7, 2, seed)}) {
      for (double k : {-1.0, -2.0}) {
        const auto c = ascat_defect(x, k);
        const double want = oracle::ascat(oracle::finite_matrix(x), k);
        CHECK(std::abs(c.cert.defect - want) <= 1e-7 * std::max(1.0, std::abs(want)));
        REQUIRE(c.labelled);
        CHECK(std::abs(ascat_value(x, *c.labelled, k) - c.cert.defect) <= 1e-9);
        for (double r : c.side_residuals) CHECK(r <= 1e-9);
      }
    }
  }
}

TEST_CASE("non-embeddable quadruples are listed") {
  // Not a metric: the triangle (0,1,2) fails, so every quadruple through
  // it is reported.
  const auto bad = ExtendedMetricSpace::from_rows({{0, 3.5, 1, 2, 2}, {3.5, 0, 1, 2, 2}, {1, 1, 0, 2, 2}, {2, 2, 2, 0, 2}, {2, 2, 2, 2, 0}});
  const auto c = ascat_defect(bad, -1);
  CHECK_FALSE(c.non_embeddable.empty());
  for (const auto& q : c.non_embeddable) {
    const int hits = (std::count(q.begin(), q.end(), 0) + std::count(q.begin(), q.end(), 1) + std::count(q.begin(), q.end(), 2));
    CHECK(hits == 3);
  }
}

TEST_CASE("ascat bounds the sn defect: sn-form apt <= max(0, ascat) / sqrt(-kappa)") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (const auto& x : {random_metric(8, 1, 10, seed), euclidean(2, 8, 3, seed), hyperboloid(-1, 8, 2, seed), strip(1, 3.0 + seed)}) {
      for (double k : {-1.0, -2.0}) {
        const double sn = apt_defect(x, k).sn.defect;
        const double asc = ascat_defect(x, k).cert.defect;
        CHECK(sn <= std::max(0.0, asc) / std::sqrt(-k) + 1e-9);
      }
    }
  }
}
