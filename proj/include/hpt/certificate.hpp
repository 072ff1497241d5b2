#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hpt/metric_space.hpp"
#include "hpt/quad_scan.hpp"

namespace hpt {

/// A defect value together with the labelled quadruple that attains it.
///
/// `witness` holds indices into the scanned space (omega included); it is
/// empty when the space has too few points for any quadruple. `pairing`
/// names the opposite pairs placed on the left-hand side, e.g. "13|24"
/// means d(x1,x3) and d(x2,x4) with (x1..x4) = witness.
struct Certificate {
  double defect = 0.0;
  std::optional<Quad> witness;
  std::string pairing;
  std::uint64_t scanned = 0;
  double elapsed_s = 0.0;
};

nlohmann::json to_json(const Certificate& cert);

/// Serializes a double, mapping +-inf and NaN to strings.
nlohmann::json number_json(double v);

nlohmann::json to_json(const ValidationReport& report);

/// Small wall-clock helper for the elapsed fields.
class Stopwatch {
 public:
  Stopwatch();
  [[nodiscard]] double seconds() const;

 private:
  std::int64_t start_ns_;
};

/// Maps a scan result over a DenseMatrix back to source-space indices.
template <std::size_t Slots, class Labels>
Certificate make_certificate(const ScanResult<Slots>& r, const DenseMatrix& m, const Labels& slot_labels,
                             double empty_defect, double elapsed) {
  Certificate c;
  c.scanned = r.scanned;
  c.elapsed_s = elapsed;
  if (!r.found) {
    c.defect = empty_defect;
    return c;
  }
  c.defect = r.best;
  c.witness = Quad{m.original[r.quad[0]], m.original[r.quad[1]], m.original[r.quad[2]],
                   m.original[r.quad[3]]};
  c.pairing = slot_labels[r.slot];
  return c;
}

}  // namespace hpt
