#include "hpt/certificate.hpp"

#include <chrono>
#include <cmath>

namespace hpt {

namespace {
std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
}  // namespace

Stopwatch::Stopwatch() : start_ns_(now_ns()) {}

double Stopwatch::seconds() const { return static_cast<double>(now_ns() - start_ns_) * 1e-9; }

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j;
  j["defect"] = number_json(cert.defect);
  if (cert.witness) {
    j["witness"] = *cert.witness;
    j["pairing"] = cert.pairing;
  } else {
    j["witness"] = nullptr;
    j["pairing"] = nullptr;
  }
  j["scanned"] = cert.scanned;
  j["elapsed_s"] = cert.elapsed_s;
  return j;
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& violation : report.violations) {
    v.push_back({{"kind", to_string(violation.kind)},
                 {"witness", violation.witness},
                 {"magnitude", number_json(violation.magnitude)}});
  }
  return {{"ok", report.ok}, {"violations", v}};
}

}  // namespace hpt
