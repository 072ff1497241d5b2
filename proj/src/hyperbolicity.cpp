#include "hpt/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hpt {

namespace {

constexpr double kNoCandidate = -std::numeric_limits<double>::infinity();

std::size_t pairing_slot(std::string_view pairing) {
  for (std::size_t s = 0; s < kPairings.size(); ++s) {
    if (pairing == kPairings[s]) return s;
  }
  throw Error("unknown pairing '" + std::string(pairing) + "'");
}

double dist(const DenseMatrix& m, const Quad& q, const std::array<int, 2>& e) {
  return m(q[e[0]], q[e[1]]);
}

std::array<double, 3> pairing_sums(const DenseMatrix& m, const Quad& q) {
  std::array<double, 3> s{};
  for (std::size_t p = 0; p < 3; ++p) {
    s[p] = dist(m, q, kPairingIndices[p][0]) + dist(m, q, kPairingIndices[p][1]);
  }
  return s;
}

double max_distance(const DenseMatrix& m, const Quad& q) {
  double rho = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) rho = std::max(rho, m(q[a], q[b]));
  return rho;
}

// Degenerate labellings (a repeated point) are skipped by every scan here:
// for the four-point condition two pairing sums coincide and are the
// largest, and for the exp form the left term equals one right-hand term,
// so the residual is at most -e^{c S} < 0.
std::array<double, 3> gromov_eval(const DenseMatrix& m, const Quad& q) {
  const auto s = pairing_sums(m, q);
  std::size_t top = 0;
  for (std::size_t p = 1; p < 3; ++p) {
    if (s[p] > s[top]) top = p;
  }
  double second = kNoCandidate;
  for (std::size_t p = 0; p < 3; ++p) {
    if (p != top) second = std::max(second, s[p]);
  }
  std::array<double, 3> out{kNoCandidate, kNoCandidate, kNoCandidate};
  out[top] = s[top] - second;
  return out;
}

std::array<double, 3> pt_eval(const DenseMatrix& m, const Quad& q, double kappa) {
  std::array<double, 3> prod{};
  for (std::size_t p = 0; p < 3; ++p) {
    prod[p] = sn_kappa(kappa, 0.5 * dist(m, q, kPairingIndices[p][0])) *
              sn_kappa(kappa, 0.5 * dist(m, q, kPairingIndices[p][1]));
  }
  std::array<double, 3> out{};
  for (std::size_t p = 0; p < 3; ++p) {
    const double others = prod[(p + 1) % 3] + prod[(p + 2) % 3];
    out[p] = prod[p] == 0.0 ? (others == 0.0 ? 0.0 : kNoCandidate) : (prod[p] - others) / prod[p];
  }
  return out;
}

std::array<double, 3> exp_eval(const DenseMatrix& m, const Quad& q, double c) {
  const auto s = pairing_sums(m, q);
  const double rho = max_distance(m, q);
  std::array<double, 3> e{};
  for (std::size_t p = 0; p < 3; ++p) e[p] = std::exp(c * (s[p] - rho));
  return {e[0] - e[1] - e[2], e[1] - e[0] - e[2], e[2] - e[0] - e[1]};
}

// sn(x/2) e^{-c x} with c = sqrt(-kappa)/2, free of overflow.
double sn_half_scaled(double x, double c) { return -std::expm1(-2.0 * c * x) / (4.0 * c); }

std::array<double, 3> sn_eval(const DenseMatrix& m, const Quad& q, double c) {
  const auto s = pairing_sums(m, q);
  const double rho = max_distance(m, q);
  std::array<double, 3> t{};
  for (std::size_t p = 0; p < 3; ++p) {
    const double a = dist(m, q, kPairingIndices[p][0]);
    const double b = dist(m, q, kPairingIndices[p][1]);
    t[p] = std::exp(c * (s[p] - rho)) * sn_half_scaled(a, c) * sn_half_scaled(b, c);
  }
  return {t[0] - t[1] - t[2], t[1] - t[0] - t[2], t[2] - t[0] - t[1]};
}

DenseMatrix quad_matrix(const ExtendedMetricSpace& space, const Quad& quad) {
  // 4x4 dense block of the given labelled quadruple.
  DenseMatrix m;
  m.n = 4;
  m.d.resize(16);
  for (std::size_t a = 0; a < 4; ++a) {
    if (space.is_omega(quad[a])) throw Error("quadruple contains omega");
    m.original.push_back(quad[a]);
    for (std::size_t b = 0; b < 4; ++b) m.d[a * 4 + b] = space.at(quad[a], quad[b]).value();
  }
  return m;
}

constexpr Quad kIdentity{0, 1, 2, 3};

void require_negative(double kappa) {
  if (!(kappa < 0.0)) throw Error("asymptotic defects need kappa < 0");
}

}  // namespace

double gromov_product(const ExtendedMetricSpace& space, std::size_t x, std::size_t y,
                      std::size_t z) {
  if (space.is_omega(x) || space.is_omega(y) || space.is_omega(z)) {
    throw Error("Gromov product of the point at infinity");
  }
  return 0.5 * (space.at(z, x).value() + space.at(z, y).value() - space.at(x, y).value());
}

Certificate gromov_delta(const ExtendedMetricSpace& space, const ScanOptions& opts) {
  Stopwatch clock;
  const DenseMatrix m = space.finite_part();
  const auto r = scan_quadruples<3>(m.n, [&m](const Quad& q) { return gromov_eval(m, q); }, opts);
  return make_certificate(r, m, kPairings, 0.0, clock.seconds());
}

double sn_kappa(double kappa, double x) {
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    return std::sin(k * x) / k;
  }
  if (kappa < 0.0) {
    const double k = std::sqrt(-kappa);
    return std::sinh(k * x) / k;
  }
  return x;
}

Certificate pt_kappa_defect(const ExtendedMetricSpace& space, double kappa,
                            const ScanOptions& opts) {
  const DenseMatrix m = space.finite_part();
  if (m.n < 4) throw Error("PT_kappa defect needs at least 4 finite points");
  if (kappa > 0.0 && !(diameter(space) < std::numbers::pi / std::sqrt(kappa))) {
    throw Error("PT_kappa with kappa > 0 needs diameter < pi/sqrt(kappa)");
  }
  Stopwatch clock;
  const auto r =
      scan_quadruples<3>(m.n, [&](const Quad& q) { return pt_eval(m, q, kappa); }, opts);
  return make_certificate(r, m, kPairings, 0.0, clock.seconds());
}

AptCertificate apt_defect(const ExtendedMetricSpace& space, double kappa,
                          const ScanOptions& opts) {
  require_negative(kappa);
  const DenseMatrix m = space.finite_part();
  if (m.n < 4) throw Error("asymptotic PT defect needs at least 4 finite points");
  const double c = 0.5 * std::sqrt(-kappa);

  AptCertificate out;
  out.kappa = kappa;
  {
    Stopwatch clock;
    const auto r = scan_quadruples<3>(m.n, [&](const Quad& q) { return exp_eval(m, q, c); }, opts);
    out.exp = make_certificate(r, m, kPairings, 0.0, clock.seconds());
  }
  {
    Stopwatch clock;
    const auto r = scan_quadruples<3>(m.n, [&](const Quad& q) { return sn_eval(m, q, c); }, opts);
    out.sn = make_certificate(r, m, kPairings, 0.0, clock.seconds());
  }
  return out;
}

nlohmann::json to_json(const AptCertificate& cert) {
  return {{"kappa", cert.kappa},
          {"exp_defect", number_json(cert.exp.defect)},
          {"sn_defect", number_json(cert.sn.defect)},
          {"exp", to_json(cert.exp)},
          {"sn", to_json(cert.sn)}};
}

double gromov_value(const ExtendedMetricSpace& space, const Quad& quad) {
  const auto v = gromov_eval(quad_matrix(space, quad), kIdentity);
  return *std::max_element(v.begin(), v.end());
}

double pt_kappa_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                      double kappa) {
  return pt_eval(quad_matrix(space, quad), kIdentity, kappa)[pairing_slot(pairing)];
}

double apt_exp_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                     double kappa) {
  require_negative(kappa);
  return exp_eval(quad_matrix(space, quad), kIdentity,
                  0.5 * std::sqrt(-kappa))[pairing_slot(pairing)];
}

double apt_sn_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                    double kappa) {
  require_negative(kappa);
  return sn_eval(quad_matrix(space, quad), kIdentity,
                 0.5 * std::sqrt(-kappa))[pairing_slot(pairing)];
}

double relative_gromov_product(const ExtendedMetricSpace& space, std::size_t o, std::size_t w,
                               std::size_t x, std::size_t y) {
  return gromov_product(space, x, y, o) - gromov_product(space, w, x, o) -
         gromov_product(space, w, y, o);
}

double hyperbolicity_bound_from_apt(double delta) {
  if (!(delta >= 0.0)) throw Error("apt constant must be nonnegative");
  return 2.0 * std::log(2.0 * (1.0 + delta));
}

}  // namespace hpt
