#include "ctwdi/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ctwdi {

namespace {

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::optional<double> parse_value(std::string field) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    double v = 0.0;
    const char* first = field.data() + start;
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

[[noreturn]] void parse_error(const std::string& name, std::size_t line, const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

DatedSeries parse_csv_series(std::istream& in, const std::string& name) {
    std::map<std::string, double> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) parse_error(name, lineno, "expected date,value");
        std::string date = line.substr(0, comma);
        const std::optional<double> value = parse_value(line.substr(comma + 1));
        if (!value) {
            if (lineno == 1) continue;  // header row
            parse_error(name, lineno, "unparsable value field");
        }
        if (!is_iso_date(date)) parse_error(name, lineno, "expected ISO-8601 date, got '" + date + "'");
        if (!(*value > 0.0)) parse_error(name, lineno, "nonpositive value");
        auto [it, inserted] = rows.emplace(date, *value);
        if (!inserted && it->second != *value) {
            throw std::runtime_error(name + ": conflicting duplicate for date " + date);
        }
    }
    DatedSeries out;
    out.dates.reserve(rows.size());
    out.values.reserve(rows.size());
    for (const auto& [date, value] : rows) {
        out.dates.push_back(date);
        out.values.push_back(value);
    }
    return out;
}

DatedSeries load_csv_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_csv_series(in, path);
}

AlignedPair align_series(const DatedSeries& a, const DatedSeries& b, double threshold,
                         ReturnKind kind) {
    if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("align_series: empty series");
    std::vector<std::string> common;
    std::vector<double> va, vb;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int cmp = a.dates[i].compare(b.dates[j]);
        if (cmp == 0) {
            common.push_back(a.dates[i]);
            va.push_back(a.values[i]);
            vb.push_back(b.values[j]);
            ++i, ++j;
        } else if (cmp < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    if (common.empty()) throw std::runtime_error("align_series: date sets do not intersect");
    AlignedPair out{quantize_returns(va, threshold, kind), quantize_returns(vb, threshold, kind),
                    a.size() - common.size(), b.size() - common.size(), std::move(common)};
    return out;
}

SymbolSequence parse_symbols(std::istream& in, const std::string& name,
                             std::optional<std::uint32_t> alphabet_size) {
    std::vector<Symbol> data;
    std::string line;
    std::size_t lineno = 0;
    Symbol max_seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
            parse_error(name, lineno, "expected a symbol index");
        }
        max_seen = std::max(max_seen, v);
        data.push_back(v);
    }
    if (data.empty()) throw std::runtime_error(name + ": no symbols");
    const std::uint32_t m = alphabet_size.value_or(std::max<std::uint32_t>(max_seen + 1, 2));
    return SymbolSequence(Alphabet(m), std::move(data));
}

SymbolSequence read_symbols(const std::string& path, std::optional<std::uint32_t> alphabet_size) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_symbols(in, path, alphabet_size);
}

void write_symbols(std::ostream& os, const SymbolSequence& seq) {
    for (Symbol s : seq.symbols()) os << s << '\n';
}

}  // namespace ctwdi
