#pragma once

// Area-decreasing rewrite moves on valid interval families, local search to a
// configuration-free family, and exhaustive enumeration of small disks.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "finsler/disk.hpp"

namespace finsler::opt {

using disk::HalfInteger;
using disk::Interval;
using disk::IntervalFamily;

enum class MoveKind {
  // gamma covers alpha = [a, c] and beta = [b, d], which cross (b < c) or are
  // adjacent (b = c).
  A,
  // gamma = [b, d] crosses the adjacent alpha = [a, c] and beta = [c, e].
  B,
};

std::string_view to_string(MoveKind kind) noexcept;

struct ReductionConfig {
  MoveKind kind = MoveKind::A;
  Interval gamma;
  Interval alpha;
  Interval beta;

  // MoveA with a shared endpoint (b = c).
  bool adjacent() const noexcept { return kind == MoveKind::A && alpha.b2 == beta.a2; }
  friend bool operator==(const ReductionConfig&, const ReductionConfig&) = default;
};

// First MoveA configuration in index order, else the first MoveB
// configuration (adjacent pairs scanned by their common point), else nothing.
std::optional<ReductionConfig> find_reduction(const IntervalFamily& family);

// MoveA: [a, c], [b, d] -> [a, d], [b, c] (the latter omitted when b = c).
// MoveB: re-grid to circumference n + 1 splitting c into c- < c+, then
// [a, c], [c, e], [b, d] -> [a, c+], [c-, e], [b, c-], [c+, d].
// Throws Error{StaleConfig} when the configuration does not match the family.
IntervalFamily apply_reduction(const IntervalFamily& family, const ReductionConfig& config);

struct MoveRecord {
  ReductionConfig config;
  HalfInteger area_before;
  HalfInteger area_after;
  std::size_t walls_after = 0;
};

struct MinimizeResult {
  IntervalFamily family;
  std::vector<MoveRecord> log;
};

// Applies moves until configuration-free. Every intermediate family is
// re-validated; a failure raises Error{InternalInvariant}.
MinimizeResult minimize(const IntervalFamily& family);

struct EnumerationOptions {
  unsigned threads = 1;
  std::uint64_t max_nodes = 200'000'000;
  // Exhaustive enumeration is offered for r <= 2; larger radii need opt-in.
  bool allow_large_radius = false;
};

struct EnumeratedDisk {
  std::vector<std::uint8_t> code;
  std::int64_t n = 0;
  HalfInteger area;
  IntervalFamily family;  // a representative, compacted
};

struct EnumerationSummary {
  std::int64_t r = 0;
  std::int64_t n_max = 0;
  std::size_t count = 0;
  std::optional<HalfInteger> min_area;
  std::vector<std::vector<std::uint8_t>> minimizing_codes;
  std::uint64_t nodes = 0;
};

struct EnumerationResult {
  std::vector<EnumeratedDisk> disks;  // ordered by (n, code)
  EnumerationSummary summary;
};

// All valid families of radius r with at most n_max walls, up to rotation and
// reflection. Throws Error{ComplexityRefusal} beyond the budget.
EnumerationResult enumerate_disks(std::int64_t r, std::int64_t n_max,
                                  const EnumerationOptions& options = {});

}  // namespace finsler::opt
