#pragma once

#include <cstddef>
#include <string_view>

#include <json.hpp>

#include "hpt/certificate.hpp"
#include "hpt/metric_space.hpp"
#include "hpt/quad_scan.hpp"

namespace hpt {

/// (x|y)_z = (|zx| + |zy| - |xy|) / 2. Throws if any point is omega.
double gromov_product(const ExtendedMetricSpace& space, std::size_t x, std::size_t y,
                      std::size_t z);

/// Four-point hyperbolicity: max over 4-subsets of (largest pairing sum -
/// second largest). The pairing reported is the largest one. Spaces with
/// fewer than four finite points get defect 0 and no witness. Computed on
/// the finite part; witness indices refer to the input space.
Certificate gromov_delta(const ExtendedMetricSpace& space, const ScanOptions& opts = {});

/// sin-, identity- or sinh-type with the 1/sqrt|kappa| prefactor.
double sn_kappa(double kappa, double x);

/// max over 4-subsets and pairings of (L - R) / L with
/// L = sn(r13/2) sn(r24/2) and R the two opposite sn-products.
/// kappa > 0 requires diam < pi / sqrt(kappa).
Certificate pt_kappa_defect(const ExtendedMetricSpace& space, double kappa,
                            const ScanOptions& opts = {});

/// Minimal constants of the two forms of the asymptotic PT_kappa condition.
///
///   exp form: (e^{c S_L} - e^{c S_1} - e^{c S_2}) e^{-c rho}
///   sn form:  (sn(r13/2) sn(r24/2) - sn sn - sn sn) e^{-c rho}
///
/// with c = sqrt(-kappa)/2, S the pairing sums and rho the largest distance
/// in the quadruple. X is asymptotically PT_kappa with constant delta iff
/// exp.defect <= delta. Exponentials are evaluated with rho shifted into
/// the exponent, so distances of many hundreds stay finite.
struct AptCertificate {
  double kappa = -1.0;
  Certificate exp;
  Certificate sn;
};

AptCertificate apt_defect(const ExtendedMetricSpace& space, double kappa,
                          const ScanOptions& opts = {});

nlohmann::json to_json(const AptCertificate& cert);

/// Re-evaluations at a single labelled quadruple (for witness checks).
double gromov_value(const ExtendedMetricSpace& space, const Quad& quad);
double pt_kappa_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                      double kappa);
double apt_exp_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                     double kappa);
double apt_sn_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing,
                    double kappa);

/// (x|y)_{w,o} = (x|y)_o - (w|x)_o - (w|y)_o with w a finite stand-in for
/// the boundary point.
double relative_gromov_product(const ExtendedMetricSpace& space, std::size_t o, std::size_t w,
                               std::size_t x, std::size_t y);

/// 2 ln(2 (1 + delta)): a Gromov four-point constant implied by an
/// asymptotic PT_{-1} constant delta >= 0.
double hyperbolicity_bound_from_apt(double delta);

}  // namespace hpt
