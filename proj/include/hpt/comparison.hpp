#pragma once

#include <array>
#include <optional>
#include <vector>

#include <json.hpp>

#include "hpt/certificate.hpp"
#include "hpt/metric_space.hpp"
#include "hpt/quad_scan.hpp"

namespace hpt {

/// A point of M^2_kappa (kappa < 0) on the upper sheet of the hyperboloid
/// -x0^2 + x1^2 + x2^2 = 1/kappa.
struct ModelPoint {
  std::array<double, 3> x{};
};

/// Minkowski form -x0 y0 + x1 y1 + x2 y2.
double minkowski(const ModelPoint& p, const ModelPoint& q);

/// Point at distance r from the canonical origin in direction theta.
ModelPoint model_point(double r, double theta, double kappa);

/// Distance in M^2_kappa. Throws if either point is off the sheet by more
/// than 1e-8 (relative to its size).
double model_distance(const ModelPoint& p, const ModelPoint& q, double kappa);

/// Angle at the vertex between sides `adj1` and `adj2` of a triangle in
/// M^2_kappa whose third side is `opposite`. Triangles within 1e-12 of
/// degenerate are snapped to angle 0 or pi. Throws if the sides violate
/// the triangle inequality.
double vertex_angle(double opposite, double adj1, double adj2, double kappa);

struct ModelTriangle {
  ModelPoint p1, p2, p3;
};

/// Sides a = |p2p3|, b = |p1p3|, c = |p1p2|. p1 sits at the origin, p2 on
/// the direction-0 geodesic, p3 on the positive side.
ModelTriangle embed_triangle(double a, double b, double c, double kappa);

/// Six distances of a labelled quadruple.
struct QuadDistances {
  double d12 = 0, d13 = 0, d14 = 0, d23 = 0, d24 = 0, d34 = 0;
};

struct ComparisonQuad {
  std::array<ModelPoint, 4> p;
  /// |p2 p4|, from the closed form rather than the coordinates.
  double diagonal24 = 0.0;
};

/// Two comparison triangles (1,2,3) and (1,3,4) glued along the 1-3
/// diagonal on opposite sides, with |p1p3| = d13. d24 is not used.
ComparisonQuad comparison_quadrilateral(const QuadDistances& d, double kappa);

/// Defect of the asymptotic CAT(kappa) condition for the canonical
/// comparison quadrilaterals.
///
/// For every 4-subset and each of the six (embedded diagonal, compared
/// diagonal) choices the value is sn(d24/2) - sn(|p2p4|/2). This is an
/// upper bound for the minimal delta over all admissible comparison
/// configurations. Quadruples whose sub-triangles cannot be realized are
/// listed in non_embeddable instead of aborting the scan.
struct AscatCertificate {
  double kappa = -1.0;
  Certificate cert;  ///< pairing "13|24" reads: embed x1x3, compare x2x4
  /// Witness as (x1, x2, x3, x4) with x1x3 the embedded diagonal.
  std::optional<Quad> labelled;
  /// |model - prescribed| for d12, d23, d34, d41, d13 at the witness.
  std::array<double, 5> side_residuals{};
  std::vector<Quad> non_embeddable;
};

AscatCertificate ascat_defect(const ExtendedMetricSpace& space, double kappa,
                              const ScanOptions& opts = {});

/// Value of one labelled quadruple (x1..x4), embedding x1x3.
double ascat_value(const ExtendedMetricSpace& space, const Quad& labelled, double kappa);

nlohmann::json to_json(const AscatCertificate& cert);

}  // namespace hpt
