#pragma once

// Exhaustive maximisation over the 4-subsets of an n-point set.
//
// scan_quadruples() is the OpenMP kernel every defect certifier uses;
// scan_quadruples_serial() is the plain nested-loop reference it is tested
// and benchmarked against. Both return bit-identical results for any worker
// count: candidates are reduced by (value desc, quadruple asc, slot asc).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hpt {

using Quad = std::array<std::size_t, 4>;

struct ScanOptions {
  int workers = 0;  ///< 0 = OpenMP default, 1 = serial
};

/// Result of a scan whose evaluator yields `Slots` candidate values per
/// quadruple. A NaN candidate flags the quadruple instead of competing.
template <std::size_t Slots>
struct ScanResult {
  double best = -std::numeric_limits<double>::infinity();
  Quad quad{};
  std::size_t slot = 0;
  bool found = false;
  std::uint64_t scanned = 0;
  std::vector<Quad> flagged;  ///< ascending
};

inline std::uint64_t choose4(std::size_t n) {
  if (n < 4) return 0;
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m - 1) / 2 * (m - 2) / 3 * (m - 3) / 4;
}

namespace detail {

template <std::size_t Slots>
inline bool beats(double value, const Quad& q, std::size_t slot, const ScanResult<Slots>& cur) {
  if (!cur.found) return true;
  if (value != cur.best) return value > cur.best;
  if (q != cur.quad) return q < cur.quad;
  return slot < cur.slot;
}

template <std::size_t Slots>
inline void offer(ScanResult<Slots>& acc, const Quad& q, const std::array<double, Slots>& values) {
  bool flagged = false;
  for (std::size_t s = 0; s < Slots; ++s) {
    const double v = values[s];
    if (std::isnan(v)) {
      flagged = true;
      continue;
    }
    if (v == -std::numeric_limits<double>::infinity()) continue;
    if (beats(v, q, s, acc)) {
      acc.best = v;
      acc.quad = q;
      acc.slot = s;
      acc.found = true;
    }
  }
  if (flagged) acc.flagged.push_back(q);
}

template <std::size_t Slots>
inline void merge(ScanResult<Slots>& into, const ScanResult<Slots>& from) {
  if (from.found && beats(from.best, from.quad, from.slot, into)) {
    into.best = from.best;
    into.quad = from.quad;
    into.slot = from.slot;
    into.found = true;
  }
  into.flagged.insert(into.flagged.end(), from.flagged.begin(), from.flagged.end());
}

}  // namespace detail

/// Reference implementation: lexicographic nested loops, first maximum wins.
template <std::size_t Slots, class Eval>
ScanResult<Slots> scan_quadruples_serial(std::size_t n, Eval&& eval) {
  ScanResult<Slots> acc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const Quad q{i, j, k, l};
          detail::offer<Slots>(acc, q, eval(q));
        }
  acc.scanned = choose4(n);
  return acc;
}

/// Parallel kernel: the (i, j) prefix pairs are distributed dynamically.
/// `eval` must be a pure function of the quadruple.
template <std::size_t Slots, class Eval>
ScanResult<Slots> scan_quadruples(std::size_t n, Eval&& eval, const ScanOptions& opts = {}) {
#ifndef _OPENMP
  (void)opts;
  return scan_quadruples_serial<Slots>(n, eval);
#else
  if (opts.workers == 1 || n < 4) return scan_quadruples_serial<Slots>(n, eval);
  const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();

  // Pairs (i, j) with at least two points after j.
  std::vector<std::array<std::size_t, 2>> prefixes;
  for (std::size_t i = 0; i + 3 < n; ++i)
    for (std::size_t j = i + 1; j + 2 < n; ++j) prefixes.push_back({i, j});
  const auto count = static_cast<std::ptrdiff_t>(prefixes.size());

  ScanResult<Slots> total;
#pragma omp parallel num_threads(threads)
  {
    ScanResult<Slots> local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::ptrdiff_t p = 0; p < count; ++p) {
      const auto [i, j] = prefixes[static_cast<std::size_t>(p)];
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const Quad q{i, j, k, l};
          detail::offer<Slots>(local, q, eval(q));
        }
    }
#pragma omp critical(hpt_scan_merge)
    detail::merge(total, local);
  }
  std::sort(total.flagged.begin(), total.flagged.end());
  total.scanned = choose4(n);
  return total;
#endif
}

/// The three ways to split a quadruple (x1, x2, x3, x4) into two opposite
/// pairs, in tie-break order. Slot s puts kPairings[s] on the left side.
inline constexpr std::array<const char*, 3> kPairings{"13|24", "12|34", "14|23"};

/// Index pairs (positions within the quadruple) for each pairing.
inline constexpr std::array<std::array<std::array<int, 2>, 2>, 3> kPairingIndices{{
    {{{0, 2}, {1, 3}}},
    {{{0, 1}, {2, 3}}},
    {{{0, 3}, {1, 2}}},
}};

}  // namespace hpt
