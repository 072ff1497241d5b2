#include "hpt/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hpt/generate.hpp"
#include "hpt/hyperbolicity.hpp"

namespace hpt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDegenerate = 1e-12;

void require_negative(double kappa) {
  if (!(kappa < 0.0)) throw Error("model plane needs kappa < 0");
}

// NaN when the sides violate the triangle inequality beyond the slack.
double angle_or_nan(double opposite, double adj1, double adj2, double kappa) {
  const double scale = opposite + adj1 + adj2;
  const double tol = kDegenerate * scale;
  const double e1 = opposite - adj1 + adj2;
  const double e2 = opposite + adj1 - adj2;
  const double e3 = adj1 + adj2 - opposite;
  if (e1 < -tol || e2 < -tol || e3 < -tol) return kNaN;
  if (scale == 0.0 || adj1 <= tol || adj2 <= tol) return 0.0;
  if (e1 <= tol || e2 <= tol) return 0.0;
  if (e3 <= tol) return std::numbers::pi;
  const double k = std::sqrt(-kappa);
  // Half-angle law of cosines: sin^2(A/2) = sinh(k e1/2) sinh(k e2/2) / (sinh(k b) sinh(k c)).
  const double s = std::sinh(0.5 * k * e1) * std::sinh(0.5 * k * e2) /
                   (std::sinh(k * adj1) * std::sinh(k * adj2));
  return 2.0 * std::asin(std::sqrt(std::clamp(s, 0.0, 1.0)));
}

// |p2 p4| for the glued configuration; NaN if a sub-triangle fails.
double glued_diagonal(const QuadDistances& d, double kappa) {
  const double a2 = angle_or_nan(d.d23, d.d12, d.d13, kappa);
  const double a4 = angle_or_nan(d.d34, d.d14, d.d13, kappa);
  if (std::isnan(a2) || std::isnan(a4)) return kNaN;
  return hyperbolic_polar_distance({d.d12, a2}, {d.d14, -a4}, kappa);
}

// Six (embedded, compared) diagonal choices over a sorted quadruple, as
// positions (x1, x2, x3, x4).
constexpr std::array<std::array<int, 4>, 6> kLabellings{{
    {0, 1, 2, 3},  // 13|24
    {1, 0, 3, 2},  // 24|13
    {0, 2, 1, 3},  // 12|34
    {2, 0, 3, 1},  // 34|12
    {0, 1, 3, 2},  // 14|23
    {1, 0, 2, 3},  // 23|14
}};
constexpr std::array<const char*, 6> kLabels{"13|24", "24|13", "12|34", "34|12", "14|23", "23|14"};

QuadDistances labelled_distances(const DenseMatrix& m, const Quad& q, const std::array<int, 4>& l) {
  auto at = [&](int a, int b) { return m(q[l[a]], q[l[b]]); };
  return {at(0, 1), at(0, 2), at(0, 3), at(1, 2), at(1, 3), at(2, 3)};
}

double ascat_term(const QuadDistances& d, double kappa) {
  const double bar = glued_diagonal(d, kappa);
  if (std::isnan(bar)) return kNaN;
  return sn_kappa(kappa, 0.5 * d.d24) - sn_kappa(kappa, 0.5 * bar);
}

}  // namespace

double minkowski(const ModelPoint& p, const ModelPoint& q) {
  return -p.x[0] * q.x[0] + p.x[1] * q.x[1] + p.x[2] * q.x[2];
}

ModelPoint model_point(double r, double theta, double kappa) {
  require_negative(kappa);
  const double radius = 1.0 / std::sqrt(-kappa);
  const double t = r / radius;
  return {{radius * std::cosh(t), radius * std::sinh(t) * std::cos(theta),
           radius * std::sinh(t) * std::sin(theta)}};
}

double model_distance(const ModelPoint& p, const ModelPoint& q, double kappa) {
  require_negative(kappa);
  const double radius2 = -1.0 / kappa;
  for (const auto* pt : {&p, &q}) {
    const double off = std::abs(minkowski(*pt, *pt) + radius2);
    if (!(pt->x[0] > 0.0) || off > 1e-8 * std::max(radius2, pt->x[0] * pt->x[0])) {
      throw Error("point is not on the hyperboloid sheet");
    }
  }
  const ModelPoint diff{{p.x[0] - q.x[0], p.x[1] - q.x[1], p.x[2] - q.x[2]}};
  // <p-q, p-q> = 4 R^2 sinh^2(d / 2R)
  const double chord2 = std::max(minkowski(diff, diff), 0.0);
  const double radius = std::sqrt(radius2);
  return 2.0 * radius * std::asinh(std::sqrt(chord2) / (2.0 * radius));
}

double vertex_angle(double opposite, double adj1, double adj2, double kappa) {
  require_negative(kappa);
  const double a = angle_or_nan(opposite, adj1, adj2, kappa);
  if (std::isnan(a)) throw Error("sides violate the triangle inequality");
  return a;
}

ModelTriangle embed_triangle(double a, double b, double c, double kappa) {
  const double alpha = vertex_angle(a, b, c, kappa);
  return {model_point(0.0, 0.0, kappa), model_point(c, 0.0, kappa), model_point(b, alpha, kappa)};
}

ComparisonQuad comparison_quadrilateral(const QuadDistances& d, double kappa) {
  const double a2 = vertex_angle(d.d23, d.d12, d.d13, kappa);
  const double a4 = vertex_angle(d.d34, d.d14, d.d13, kappa);
  ComparisonQuad out;
  out.p = {model_point(0.0, 0.0, kappa), model_point(d.d12, a2, kappa),
           model_point(d.d13, 0.0, kappa), model_point(d.d14, -a4, kappa)};
  out.diagonal24 = hyperbolic_polar_distance({d.d12, a2}, {d.d14, -a4}, kappa);
  return out;
}

AscatCertificate ascat_defect(const ExtendedMetricSpace& space, double kappa,
                              const ScanOptions& opts) {
  require_negative(kappa);
  const DenseMatrix m = space.finite_part();
  if (m.n < 4) throw Error("asymptotic CAT defect needs at least 4 finite points");
  Stopwatch clock;
  auto eval = [&](const Quad& q) {
    std::array<double, 6> out{};
    for (std::size_t s = 0; s < 6; ++s) out[s] = ascat_term(labelled_distances(m, q, kLabellings[s]), kappa);
    return out;
  };
  const auto r = scan_quadruples<6>(m.n, eval, opts);

  AscatCertificate out;
  out.kappa = kappa;
  out.cert = make_certificate(r, m, kLabels, 0.0, clock.seconds());
  for (const auto& q : r.flagged) {
    out.non_embeddable.push_back(
        {m.original[q[0]], m.original[q[1]], m.original[q[2]], m.original[q[3]]});
  }
  if (r.found) {
    const auto& l = kLabellings[r.slot];
    Quad labelled{};
    for (std::size_t a = 0; a < 4; ++a) labelled[a] = m.original[r.quad[l[a]]];
    out.labelled = labelled;
    const QuadDistances d = labelled_distances(m, r.quad, l);
    const ComparisonQuad cq = comparison_quadrilateral(d, kappa);
    const std::array<std::array<int, 2>, 5> sides{{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}};
    const std::array<double, 5> want{d.d12, d.d23, d.d34, d.d14, d.d13};
    for (std::size_t s = 0; s < 5; ++s) {
      out.side_residuals[s] =
          std::abs(model_distance(cq.p[sides[s][0]], cq.p[sides[s][1]], kappa) - want[s]);
    }
  }
  return out;
}

double ascat_value(const ExtendedMetricSpace& space, const Quad& x, double kappa) {
  require_negative(kappa);
  auto d = [&](std::size_t a, std::size_t b) { return space.at(x[a], x[b]).value(); };
  const QuadDistances qd{d(0, 1), d(0, 2), d(0, 3), d(1, 2), d(1, 3), d(2, 3)};
  const double v = ascat_term(qd, kappa);
  if (std::isnan(v)) throw Error("quadruple has no comparison configuration");
  return v;
}

nlohmann::json to_json(const AscatCertificate& cert) {
  nlohmann::json j = to_json(cert.cert);
  j["kappa"] = cert.kappa;
  j["labelled_witness"] = cert.labelled ? nlohmann::json(*cert.labelled) : nlohmann::json(nullptr);
  nlohmann::json residuals = nlohmann::json::array();
  for (double r : cert.side_residuals) residuals.push_back(number_json(r));
  j["side_residuals"] = residuals;
  j["non_embeddable"] = cert.non_embeddable;
  return j;
}

}  // namespace hpt
