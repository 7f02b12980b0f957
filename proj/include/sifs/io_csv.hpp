#pragma once

#include <string>

#include "sifs/compact_set.hpp"
#include "sifs/suzuki.hpp"

namespace sifs {

/// CSV form of a compact set: header `# resolution=<eps> dim=<d>`, then one
/// point per row, coordinates as decimal text with 12 significant digits.
/// Index sets use dim=0 and one index per row.
std::string set_to_csv(const CompactSet& set);
CompactSet set_from_csv(const std::string& text, const std::string& origin = "csv");
CompactSet load_set_csv(const std::string& path);

/// Trace CSV columns: iter, h_succ, ratio, cardinality.
std::string trace_to_csv(const ConvergenceTrace& trace);

/// Writes text to path atomically (temp file in the same directory, then
/// rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace sifs
