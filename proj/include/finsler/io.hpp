#pragma once

// JSON encodings and file helpers. Half-integers appear as doubled integers
// in machine fields ("area2") and as "k/2" strings in display fields.

#include <string>

#include <json.hpp>

#include "finsler/disk.hpp"
#include "finsler/line_measure.hpp"
#include "finsler/optimizer.hpp"

namespace finsler::io {

using Json = nlohmann::json;

// {"circumference2": 2n, "intervals": [[a2, b2], ...]} with sorted intervals.
Json to_json(const disk::IntervalFamily& family);
disk::IntervalFamily family_from_json(const Json& j);

// Variant-tagged: {"type": "uniform" | "parallel" | "grid" | "truncated" |
// "mixture" | "mu_ext" | "smoothed", ...}. "mu_ext" and "smoothed" are
// recipes expanded on read.
Json to_json(const ig::LineMeasure& mu);
ig::LineMeasure measure_from_json(const Json& j);

Json to_json(const disk::ValidationReport& report);
Json to_json(const opt::EnumeratedDisk& d);
Json to_json(const opt::EnumerationSummary& s);
Json to_json(const opt::MoveRecord& m);

// Throws Error{Parse}.
Json parse(const std::string& text);
std::string read_file(const std::string& path);
// Writes through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace finsler::io
