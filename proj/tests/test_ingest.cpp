#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ctwdi/ingest.hpp"
#include "ctwdi/sources.hpp"

using namespace ctwdi;

namespace {

DatedSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_csv_series(in, "test");
}

}  // namespace

TEST_CASE("csv parsing") {
    SUBCASE("two plain rows") {
        const DatedSeries s = parse("2020-01-02,100\n2020-01-03,101\n");
        REQUIRE(s.size() == 2);
        CHECK(s.dates[0] == "2020-01-02");
        CHECK(s.values[1] == 101.0);
    }
    SUBCASE("header detected by non-numeric second field") {
        const DatedSeries s = parse("date,close\n2020-01-02,100\n");
        CHECK(s.size() == 1);
    }
    SUBCASE("rows arrive out of order") {
        const DatedSeries s = parse("2020-01-03,101\n2020-01-02,100\n");
        CHECK(s.dates[0] == "2020-01-02");
        CHECK(s.values[0] == 100.0);
    }
    SUBCASE("identical duplicates collapse") {
        const DatedSeries s = parse("2020-01-02,100\n2020-01-02,100\n");
        CHECK(s.size() == 1);
    }
    SUBCASE("conflicting duplicates name the date") {
        CHECK_THROWS_WITH_AS(parse("2020-01-02,100\n2020-01-02,101\n"),
                             doctest::Contains("2020-01-02"), std::runtime_error);
    }
    SUBCASE("malformed rows report the line number") {
        CHECK_THROWS_WITH_AS(parse("2020-01-02,100\nnot-a-row\n"), doctest::Contains(":2:"),
                             std::runtime_error);
        CHECK_THROWS_WITH_AS(parse("2020-01-02,100\n2020-01-03,oops\n"),
                             doctest::Contains(":2:"), std::runtime_error);
        CHECK_THROWS_WITH_AS(parse("2020-01-02,100\n20200103,101\n"), doctest::Contains(":2:"),
                             std::runtime_error);
    }
    SUBCASE("nonpositive values rejected") {
        CHECK_THROWS_AS(parse("2020-01-02,0\n"), std::runtime_error);
        CHECK_THROWS_AS(parse("2020-01-02,-3\n"), std::runtime_error);
    }
    SUBCASE("crlf and comments tolerated") {
        const DatedSeries s = parse("# note\r\n2020-01-02,100\r\n");
        CHECK(s.size() == 1);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv_series("/nonexistent/path.csv"), std::runtime_error);
    }
}

TEST_CASE("alignment") {
    SUBCASE("identical date sets drop nothing") {
        const DatedSeries a = parse("2020-01-02,100\n2020-01-03,102\n2020-01-06,101\n");
        const AlignedPair p = align_series(a, a);
        CHECK(p.dropped_a == 0);
        CHECK(p.dropped_b == 0);
        CHECK(p.x.size() == 2);
        CHECK(p.x == p.y);
    }
    SUBCASE("disjoint date sets are an error") {
        const DatedSeries a = parse("2020-01-02,100\n");
        const DatedSeries b = parse("2020-01-03,100\n");
        CHECK_THROWS_AS(align_series(a, b), std::runtime_error);
    }
    SUBCASE("ten dates against its even-indexed half") {
        std::string ta, tb;
        for (int d = 1; d <= 10; ++d) {
            const std::string date =
                "2020-01-" + std::string(d < 10 ? "0" : "") + std::to_string(d);
            ta += date + ",100\n";
            if (d % 2 == 1) tb += date + ",200\n";
        }
        const DatedSeries a = parse(ta);
        const DatedSeries b = parse(tb);
        REQUIRE(a.size() == 10);
        REQUIRE(b.size() == 5);
        const AlignedPair p = align_series(a, b);
        CHECK(p.common_dates.size() == 5);
        CHECK(p.x.size() == 4);  // five common dates give four returns
        CHECK(p.dropped_a == 5);
        CHECK(p.dropped_b == 0);
    }
    SUBCASE("quantization applies the threshold on the common grid") {
        const DatedSeries a = parse("2020-01-02,100\n2020-01-03,102\n2020-01-06,101.9\n");
        const DatedSeries b = parse("2020-01-02,50\n2020-01-03,49\n2020-01-06,49.01\n");
        const AlignedPair p = align_series(a, b, 0.008);
        CHECK(p.x.symbols()[0] == 2);  // +2%
        CHECK(p.x.symbols()[1] == 1);  // ~-0.1%
        CHECK(p.y.symbols()[0] == 0);  // -2%
        CHECK(p.y.symbols()[1] == 1);
    }
}

TEST_CASE("symbol files round-trip") {
    const SymbolSequence x = gen_markov_binary(0.3, 500, 21);
    std::ostringstream os;
    os << "# generated for the round-trip check\n";
    write_symbols(os, x);
    std::istringstream in(os.str());
    const SymbolSequence back = parse_symbols(in, "roundtrip", x.alphabet().size());
    CHECK(back == x);
}

TEST_CASE("symbol parsing infers the alphabet and validates") {
    std::istringstream in("0\n2\n1\n");
    const SymbolSequence s = parse_symbols(in, "t");
    CHECK(s.alphabet().size() == 3);

    std::istringstream bad("0\nx\n");
    CHECK_THROWS_WITH_AS(parse_symbols(bad, "t"), doctest::Contains(":2:"), std::runtime_error);

    std::istringstream constant("0\n0\n");
    CHECK(parse_symbols(constant, "t").alphabet().size() == 2);  // never degenerate

    std::istringstream empty("# only a comment\n");
    CHECK_THROWS_AS(parse_symbols(empty, "t"), std::runtime_error);
}

TEST_CASE("dated export and re-ingest reproduce the series") {
    const DatedSeries a = parse("2020-01-02,100\n2020-01-03,102\n2020-01-06,101\n");
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) os << a.dates[i] << ',' << a.values[i] << '\n';
    const DatedSeries back = parse(os.str());
    CHECK(back.dates == a.dates);
    CHECK(back.values == a.values);
}
