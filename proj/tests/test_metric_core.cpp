#include <doctest.h>

#include <cmath>
#include <limits>

#include "hpt/generate.hpp"
#include "hpt/io.hpp"
#include "hpt/metric_space.hpp"

using namespace hpt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExtendedMetricSpace four_cycle() { return graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}); }

ExtendedMetricSpace with_omega() {
  return ExtendedMetricSpace::from_rows({{0, 1, 2, kInf}, {1, 0, 1, kInf}, {2, 1, 0, kInf}, {kInf, kInf, kInf, 0}},
                                        {"0", "1", "2", "w"}, 3);
}

}  // namespace

TEST_CASE("distance arithmetic with infinity") {
  const Distance one = Distance::finite(1.0);
  const Distance inf = Distance::infinity();
  CHECK((one + inf).is_infinite());
  CHECK((one / inf).value() == 0.0);
  CHECK((inf * Distance::finite(2.0)).is_infinite());
  CHECK_THROWS_AS(inf / inf, Error);
  CHECK_THROWS_AS(Distance::finite(0.0) * inf, Error);
  CHECK_THROWS_AS(Distance::finite(-1.0), Error);
  CHECK_THROWS_AS(Distance::finite(std::nan("")), Error);
  CHECK_THROWS_AS(static_cast<void>(inf.value()), Error);
  CHECK(one < inf);
  CHECK(vee(one, inf).is_infinite());
  CHECK(vee(one, Distance::finite(3.0)).value() == 3.0);
  CHECK(inf.to_string() == "inf");
}

TEST_CASE("validate accepts metrics") {
  CHECK(validate(line_positions({0, 1, 3})).ok);
  CHECK(validate(four_cycle()).ok);
  CHECK(validate(with_omega()).ok);
}

TEST_CASE("validate reports a triangle violation with witness and magnitude") {
  const auto x = ExtendedMetricSpace::from_rows({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  const auto r = validate(x);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == ViolationKind::triangle);
  CHECK(r.violations[0].witness == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.violations[0].magnitude == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("validate reports every kind, sorted") {
  const auto x = ExtendedMetricSpace::from_rows({{0, 1, 2, 1}, {1, 0, 0, 1}, {2.5, 0, 1, 1}, {1, 1, 1, 0}});
  const auto r = validate(x);
  CHECK_FALSE(r.ok);
  bool asym = false, diag = false, zero = false;
  for (const auto& v : r.violations) {
    asym |= v.kind == ViolationKind::asymmetric;
    diag |= v.kind == ViolationKind::nonzero_diagonal;
    zero |= v.kind == ViolationKind::zero_distance;
  }
  CHECK(asym);
  CHECK(diag);
  CHECK(zero);
  for (std::size_t i = 1; i < r.violations.size(); ++i) CHECK(r.violations[i - 1].witness <= r.violations[i].witness);

  const auto stray = ExtendedMetricSpace::from_rows({{0, kInf, 1}, {kInf, 0, 1}, {1, 1, 0}});
  const auto s = validate(stray);
  CHECK_FALSE(s.ok);
  CHECK(s.violations[0].kind == ViolationKind::omega_rule);
}

TEST_CASE("validate is independent of the worker count") {
  auto x = random_metric(30, 1, 10, 5);
  // Break a few triangles.
  std::vector<std::vector<double>> rows(30, std::vector<double>(30));
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) rows[i][j] = x.at(i, j).value();
  rows[2][7] = rows[7][2] = 40;
  rows[11][3] = rows[3][11] = 35;
  const auto bad = ExtendedMetricSpace::from_rows(rows);
  const auto a = validate(bad, 1);
  const auto b = validate(bad, 4);
  REQUIRE(a.violations.size() == b.violations.size());
  CHECK(a.violations.size() > 0);
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].witness == b.violations[i].witness);
    CHECK(a.violations[i].magnitude == b.violations[i].magnitude);
  }
}

TEST_CASE("restrict_omega") {
  const auto r = restrict_omega(with_omega());
  CHECK(r.size() == 3);
  CHECK_FALSE(r.has_omega());
  CHECK(r.at(0, 2).value() == 2.0);
  CHECK(validate(r).ok);
  CHECK_THROWS_AS(restrict_omega(line(3)), Error);

  const auto front = ExtendedMetricSpace::from_rows({{0, kInf, kInf}, {kInf, 0, 4}, {kInf, 4, 0}}, {"w", "a", "b"}, 0);
  const auto f = restrict_omega(front);
  CHECK(f.labels() == std::vector<std::string>{"a", "b"});
  CHECK(f.at(0, 1).value() == 4.0);
}

TEST_CASE("scale") {
  const auto x = scale(line_positions({0, 1, 3}), 2);
  CHECK(x.at(0, 1).value() == 2);
  CHECK(x.at(1, 2).value() == 4);
  CHECK(x.at(0, 2).value() == 6);
  const auto y = random_metric(9, 1, 10, 3);
  CHECK(scale(y, 1) == y);
  const auto back = scale(scale(y, 7.3), 1 / 7.3);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      CHECK(std::abs(back.at(i, j).value() - y.at(i, j).value()) <= 1e-12 * y.at(i, j).value());
  CHECK(scale(with_omega(), 3).at(0, 3).is_infinite());
  CHECK_THROWS_AS(scale(y, 0), Error);
  CHECK_THROWS_AS(scale(y, -1), Error);
}

TEST_CASE("snowflake") {
  CHECK(snowflake(line(4), 0.5).at(0, 3).value() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  const auto y = random_metric(10, 1, 10, 8);
  CHECK(snowflake(y, 1) == y);
  for (double eps : {0.25, 0.5, 0.75, 1.0}) CHECK(validate(snowflake(y, eps)).ok);
  CHECK_THROWS_AS(snowflake(y, 0), Error);
  CHECK_THROWS_AS(snowflake(y, 1.5), Error);
  CHECK_THROWS_AS(snowflake(with_omega(), 0.5), Error);
}

TEST_CASE("generators") {
  const auto l = line(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(l.at(i, j).value() == std::abs(double(i) - double(j)));

  const auto s = strip(1, 10);
  CHECK(s.at(0, 2).value() == doctest::Approx(std::sqrt(101.0)).epsilon(1e-15));
  CHECK(s.at(1, 3).value() == doctest::Approx(std::sqrt(101.0)).epsilon(1e-15));
  CHECK(s.at(0, 1).value() == 10);
  CHECK(s.at(2, 3).value() == 10);
  CHECK(s.at(0, 3).value() == 1);
  CHECK(s.at(1, 2).value() == 1);
  for (double t : {0.5, 3.0, 17.0}) {
    const double d = strip(2.5, t).at(0, 2).value();
    CHECK(std::abs(d * d - (t * t + 6.25)) <= 1e-12 * (t * t + 6.25));
  }

  const auto h = hyperbolic_space({{0.0, 0.0}, {1.0, 0.0}}, -1);
  CHECK(h.at(0, 1).value() == doctest::Approx(1.0).epsilon(1e-14));
  const auto h2 = hyperbolic_space({{0.7, 0.3}, {1.2, 2.1}}, -1);
  // Minkowski oracle: cosh d = -<p,q>.
  auto pt = [](double r, double t) { return std::array<double, 3>{std::cosh(r), std::sinh(r) * std::cos(t), std::sinh(r) * std::sin(t)}; };
  const auto p = pt(0.7, 0.3);
  const auto q = pt(1.2, 2.1);
  CHECK(h2.at(0, 1).value() == doctest::Approx(std::acosh(p[0] * q[0] - p[1] * q[1] - p[2] * q[2])).epsilon(1e-12));

  CHECK_THROWS_AS(line(1), Error);
  CHECK_THROWS_AS(strip(0, 3), Error);
  CHECK_THROWS_AS(hyperboloid(0.5, 5, 1, 1), Error);
  CHECK_THROWS_AS(graph(3, {{0, 1, 1}}), Error);
}

TEST_CASE("generate dispatch is deterministic and always valid") {
  const char* specs[] = {"euclidean:dim=2,n=12", "euclidean:dim=3,n=9,box=5", "hyperboloid:kappa=-1,n=15,radius=2",
                         "graph:n=4,edges=0-1;1-2;2-3;3-0", "line:n=5", "line:points=0;1;3", "strip:a=1,t=10",
                         "random_metric:n=10", "circle:n=8,radius=2"};
  for (const char* text : specs) {
    for (std::uint64_t seed : {0u, 1u, 99u}) {
      const auto a = generate(GeneratorSpec::parse(text, seed));
      const auto b = generate(GeneratorSpec::parse(text, seed));
      CHECK(a == b);
      CHECK_MESSAGE(validate(a).ok, text);
    }
  }
  CHECK(generate(GeneratorSpec::parse("hyperboloid:kappa=-1,n=15,radius=2", 1)).size() == 15);
  CHECK(generate(GeneratorSpec::parse("euclidean:dim=2,n=6", 1)) != generate(GeneratorSpec::parse("euclidean:dim=2,n=6", 2)));
  CHECK_THROWS_AS(generate(GeneratorSpec::parse("euclidean:dim=2,n=6,bogus=1")), Error);
  CHECK_THROWS_AS(generate(GeneratorSpec::parse("nosuch:n=3")), Error);
  CHECK_THROWS_AS(GeneratorSpec::parse("line:n"), Error);
}

TEST_CASE("csv round trip with omega") {
  const auto x = with_omega();
  const auto back = parse_csv(write_csv(x));
  CHECK(back == x);
  const auto plain = parse_csv("0,inf,1,2\ninf,0,inf,inf\n1,inf,0,1\n2,inf,1,0\n");
  REQUIRE(plain.omega());
  CHECK(*plain.omega() == 1);
  CHECK(validate(plain).ok);
  const auto y = random_metric(7, 1, 10, 4);
  CHECK(parse_csv(write_csv(y)) == y);
  CHECK_THROWS_AS(parse_csv("0,1\n1,0,2\n"), Error);
  CHECK_THROWS_AS(parse_csv("0,1\n1,x\n"), Error);
  CHECK_THROWS_AS(parse_csv(""), Error);
}

TEST_CASE("json descriptors") {
  const auto x = with_omega();
  CHECK(from_descriptor(to_descriptor(x)) == x);
  CHECK(to_descriptor(x)["matrix"][0][3] == "inf");
  const auto g = from_descriptor(nlohmann::json::parse(R"({"generator": {"kind": "euclidean", "params": {"dim": 2, "n": 5}, "seed": 3}})"));
  CHECK(g == euclidean(2, 5, 1.0, 3));
  CHECK_THROWS_AS(from_descriptor(nlohmann::json::parse("[1,2]")), Error);
  CHECK(fnv1a_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(fnv1a_digest("a") == "fnv1a64:af63dc4c8601ec8c");
}
