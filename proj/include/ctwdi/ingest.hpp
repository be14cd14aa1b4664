#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctwdi/core.hpp"

namespace ctwdi {

/// Day-keyed positive series: ISO-8601 dates, unique and sorted, values > 0.
struct DatedSeries {
    std::vector<std::string> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
};

/// Parse a two-column date,value CSV. An optional header is detected by a
/// non-numeric second field. Rows may arrive out of order; duplicates with
/// identical values collapse, conflicting duplicates are an error.
DatedSeries parse_csv_series(std::istream& in, const std::string& name);
DatedSeries load_csv_series(const std::string& path);

/// Two equal-length ternary sequences on the intersected date grid, plus how
/// many dates each input lost to the intersection.
struct AlignedPair {
    SymbolSequence x;
    SymbolSequence y;
    std::size_t dropped_a = 0;
    std::size_t dropped_b = 0;
    std::vector<std::string> common_dates;
};

/// Intersect the two series by date, compute per-day returns on the common
/// grid, and quantize both with the same threshold.
AlignedPair align_series(const DatedSeries& a, const DatedSeries& b, double threshold = 0.008,
                         ReturnKind kind = ReturnKind::simple);

/// Single-column symbol CSV ('#' lines and blanks ignored). The alphabet is
/// the largest symbol plus one unless given explicitly.
SymbolSequence read_symbols(const std::string& path,
                            std::optional<std::uint32_t> alphabet_size = std::nullopt);
SymbolSequence parse_symbols(std::istream& in, const std::string& name,
                             std::optional<std::uint32_t> alphabet_size = std::nullopt);
void write_symbols(std::ostream& os, const SymbolSequence& seq);

}  // namespace ctwdi
