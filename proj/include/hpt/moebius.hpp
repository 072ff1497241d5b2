#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "hpt/certificate.hpp"
#include "hpt/metric_space.hpp"
#include "hpt/quad_scan.hpp"

namespace hpt {

/// Projective triple (a:b:c) = (d(x,y)d(z,w) : d(x,z)d(y,w) : d(x,w)d(y,z)),
/// normalized so that the largest entry is 1.
struct CrossRatioTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// True iff no index occurs three or more times.
bool admissible(const Quad& quad);

/// Cross-ratio triple of an admissible quadruple. If omega occurs once,
/// its infinite factor is divided out of every product; if it occurs
/// twice the result is (0:1:1) up to the position of the zero.
CrossRatioTriple crt(const ExtendedMetricSpace& space, const Quad& quad);

/// Triangle inequality among the entries, with 1e-12 slack.
bool in_delta(const CrossRatioTriple& t);

/// max over 4-subsets and pairings of (P_left - P_1 - P_2) / P_left, where
/// the P are the three products of opposite distances. The space is
/// Ptolemy iff the defect is <= 0. Quadruples through omega use the
/// one-infinity cross-ratio rule, so an extended space is Ptolemy iff every
/// cross-ratio triple lies in Delta.
Certificate ptolemy_defect(const ExtendedMetricSpace& space, const ScanOptions& opts = {});

/// The normalized Ptolemy residual of one labelled quadruple.
double ptolemy_value(const ExtendedMetricSpace& space, const Quad& quad, std::string_view pairing);

struct EquivalenceResult {
  bool equivalent = false;
  double max_discrepancy = 0.0;
  std::optional<Quad> witness;
};

/// Compares normalized cross-ratio triples of the identity map on every
/// admissible quadruple (one labelling per multiset; relabelling permutes
/// both triples alike). Equivalent iff the discrepancy is <= 1e-9.
EquivalenceResult moebius_equivalent(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b,
                                     const ScanOptions& opts = {});

struct InvolutionResult {
  ExtendedMetricSpace space;
  ValidationReport validation;
};

/// Metric involution d_w(z,z') = d(z,z') / (d(w,z) d(w,z')) sending point w
/// to infinity. If the input already has an omega at another index, that
/// point becomes finite with d_w(old, z) = 1/d(w,z) (the infinite factors
/// cancel), so involutions compose. The attached validation is ok iff the
/// input is Ptolemy.
InvolutionResult involute(const ExtendedMetricSpace& space, std::size_t omega_index);

struct HomothetyResult {
  bool ok = false;
  double lambda = 0.0;
  /// Pair whose ratio deviates most from lambda.
  std::pair<std::size_t, std::size_t> worst{0, 0};
  double worst_relative = 0.0;
};

/// lambda with d' = lambda d on all finite pairs (median ratio), ok iff
/// every ratio is within 1e-9 relative of it.
HomothetyResult homothety_ratio(const ExtendedMetricSpace& a, const ExtendedMetricSpace& b);

}  // namespace hpt
