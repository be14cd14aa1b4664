#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "ctwdi/sources.hpp"

using namespace ctwdi;

namespace {

std::string render(const SymbolSequence& s) {
    std::string out;
    for (Symbol v : s.symbols()) out += static_cast<char>('0' + v);
    return out;
}

double flip_fraction(const SymbolSequence& a, const SymbolSequence& b) {
    std::size_t flips = 0;
    for (std::size_t i = 0; i < a.size(); ++i) flips += a[i] != b[i];
    return static_cast<double>(flips) / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("generators are reproducible and seed-sensitive") {
    const SymbolSequence a = gen_markov_binary(0.3, 1000, 42);
    const SymbolSequence b = gen_markov_binary(0.3, 1000, 42);
    CHECK(a == b);
    CHECK(!(a == gen_markov_binary(0.3, 1000, 43)));

    // pinned prefixes guard the seeding path and the engine's portability
    CHECK(render(gen_markov_binary(0.3, 16, 42)) == "1110000010000011");
    CHECK(render(bsc(gen_markov_binary(0.3, 16, 42), 0.2, 42)) == "1111000110001111");
}

TEST_CASE("markov chain edge parameters") {
    const SymbolSequence constant = gen_markov_binary(0.0, 64, 5);
    for (std::size_t i = 1; i < constant.size(); ++i) CHECK(constant[i] == constant[0]);

    const SymbolSequence alternating = gen_markov_binary(1.0, 64, 5);
    for (std::size_t i = 1; i < alternating.size(); ++i) {
        CHECK(alternating[i] == (alternating[i - 1] ^ 1u));
    }
}

TEST_CASE("markov flip rate concentrates") {
    const SymbolSequence x = gen_markov_binary(0.3, 1000000, 7);
    std::size_t flips = 0;
    for (std::size_t i = 1; i < x.size(); ++i) flips += x[i] != x[i - 1];
    const double rate = static_cast<double>(flips) / static_cast<double>(x.size() - 1);
    CHECK(std::abs(rate - 0.3) <= 0.003);
}

TEST_CASE("bsc edge parameters and flip fraction") {
    const SymbolSequence x = gen_markov_binary(0.3, 1000000, 9);
    CHECK(bsc(x, 0.0, 1) == x);
    const SymbolSequence complemented = bsc(x, 1.0, 1);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(complemented[i] == (x[i] ^ 1u));

    const SymbolSequence y = bsc(x, 0.2, 9);
    CHECK(std::abs(flip_fraction(x, y) - 0.2) <= 0.0016);  // 4 sigma at n = 1e6

    CHECK_THROWS_AS(bsc(SymbolSequence(Alphabet(3), {0, 1, 2}), 0.1, 1), std::invalid_argument);
}

TEST_CASE("isi channel matches the two-tap rule") {
    SUBCASE("noiseless, no delay") {
        const SymbolSequence x(Alphabet(2), {0, 1, 1, 0});
        const SymbolSequence y = isi_delay_channel(x, 0, 0.0, 1);
        CHECK(render(y) == "0101");
    }
    SUBCASE("noise rate recovered exactly") {
        const SymbolSequence x = gen_markov_binary(0.3, 1000000, 11);
        const SymbolSequence y = isi_delay_channel(x, 2, 0.1, 11);
        std::size_t noisy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto tap = [&](std::ptrdiff_t t) -> Symbol {
                return t >= 0 ? x[static_cast<std::size_t>(t)] : 0;
            };
            const Symbol clean = tap(static_cast<std::ptrdiff_t>(i) - 2) ^
                                 tap(static_cast<std::ptrdiff_t>(i) - 3);
            noisy += y[i] != clean;
        }
        const double rate = static_cast<double>(noisy) / static_cast<double>(x.size());
        CHECK(std::abs(rate - 0.1) <= 0.0012);  // 4 sigma
    }
    SUBCASE("non-binary input rejected") {
        CHECK_THROWS_AS(isi_delay_channel(SymbolSequence(Alphabet(3), {0, 2}), 1, 0.1, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("coupled system wiring") {
    SUBCASE("noiseless channels copy straight through") {
        const CausalPair p = coupled_bsc_system(0.0, 0.0, 32, 3);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.y[i] == p.x[i]);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(p.x[i + 1] == p.y[i]);
    }
    SUBCASE("forward copy with randomizing backchannel") {
        const CausalPair p = coupled_bsc_system(0.0, 0.5, 100000, 3);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.y[i] == p.x[i]);
    }
    SUBCASE("empirical channel parameters at 4 sigma") {
        const CausalPair p = coupled_bsc_system(0.1, 0.2, 1000000, 13);
        std::size_t forward_flips = 0, backward_flips = 0;
        for (std::size_t i = 0; i < p.size(); ++i) forward_flips += p.y[i] != p.x[i];
        for (std::size_t i = 0; i + 1 < p.size(); ++i) backward_flips += p.x[i + 1] != p.y[i];
        const double n = static_cast<double>(p.size());
        CHECK(std::abs(forward_flips / n - 0.1) <= 0.0012);
        CHECK(std::abs(backward_flips / (n - 1) - 0.2) <= 0.0016);
    }
}

TEST_CASE("iid pair respects q and the copy flag") {
    const CausalPair copy = iid_pair(0.25, true, 100000, 17);
    for (std::size_t i = 0; i < copy.size(); ++i) CHECK(copy.y[i] == copy.x[i]);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < copy.size(); ++i) ones += copy.x[i];
    CHECK(std::abs(static_cast<double>(ones) / 100000.0 - 0.25) <= 0.006);  // ~4 sigma

    const CausalPair indep = iid_pair(0.5, false, 1000, 17);
    bool differs = false;
    for (std::size_t i = 0; i < indep.size(); ++i) differs = differs || indep.x[i] != indep.y[i];
    CHECK(differs);
}

TEST_CASE("config dispatch") {
    SourceConfig cfg;
    cfg.variant = IsiDelayConfig{0.3, 2, 0.1};
    cfg.n = 100;
    cfg.seed = 4;
    const CausalPair p = generate(cfg);
    CHECK(p.size() == 100);
    CHECK(p.x == gen_markov_binary(0.3, 100, 4));
    CHECK(p.y == isi_delay_channel(p.x, 2, 0.1, 4));
}
