#include "ctwdi/sources.hpp"

#include <stdexcept>

namespace ctwdi {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

void require_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

void require_binary(const SymbolSequence& x, const char* op) {
    if (x.alphabet().size() != 2) {
        throw std::invalid_argument(std::string(op) + ": input must be binary");
    }
}

}  // namespace

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix_finalize(seed + kGolden * (stream + 1)));
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

bool bernoulli(std::mt19937_64& eng, double p) {
    return uniform01(eng) < p;
}

SymbolSequence gen_markov_binary(double p, std::size_t n, std::uint64_t seed) {
    require_prob(p, "gen_markov_binary: p");
    if (n == 0) throw std::invalid_argument("gen_markov_binary: n must be positive");
    std::mt19937_64 eng = seeded_engine(seed, 0);
    std::vector<Symbol> out(n);
    out[0] = bernoulli(eng, 0.5) ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i) {
        out[i] = bernoulli(eng, p) ? (out[i - 1] ^ 1u) : out[i - 1];
    }
    return SymbolSequence(Alphabet(2), std::move(out));
}

SymbolSequence bsc(const SymbolSequence& x, double eps, std::uint64_t seed) {
    require_prob(eps, "bsc: eps");
    require_binary(x, "bsc");
    std::mt19937_64 eng = seeded_engine(seed, 1);
    std::vector<Symbol> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = bernoulli(eng, eps) ? (x[i] ^ 1u) : x[i];
    }
    return SymbolSequence(Alphabet(2), std::move(out));
}

SymbolSequence isi_delay_channel(const SymbolSequence& x, std::uint32_t delay, double eps,
                                 std::uint64_t seed) {
    require_prob(eps, "isi_delay_channel: eps");
    require_binary(x, "isi_delay_channel");
    std::mt19937_64 eng = seeded_engine(seed, 1);
    auto tap = [&x](std::ptrdiff_t i) -> Symbol {
        return i >= 0 ? x[static_cast<std::size_t>(i)] : 0;  // pad before the start
    };
    std::vector<Symbol> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(i) - delay;
        const Symbol w = bernoulli(eng, eps) ? 1 : 0;
        out[i] = tap(t) ^ tap(t - 1) ^ w;
    }
    return SymbolSequence(Alphabet(2), std::move(out));
}

CausalPair coupled_bsc_system(double alpha, double beta, std::size_t n, std::uint64_t seed) {
    require_prob(alpha, "coupled_bsc_system: alpha");
    require_prob(beta, "coupled_bsc_system: beta");
    if (n == 0) throw std::invalid_argument("coupled_bsc_system: n must be positive");
    std::mt19937_64 init = seeded_engine(seed, 0);
    std::mt19937_64 forward = seeded_engine(seed, 1);
    std::mt19937_64 backward = seeded_engine(seed, 2);
    std::vector<Symbol> xs(n), ys(n);
    xs[0] = bernoulli(init, 0.5) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        ys[i] = bernoulli(forward, alpha) ? (xs[i] ^ 1u) : xs[i];
        if (i + 1 < n) xs[i + 1] = bernoulli(backward, beta) ? (ys[i] ^ 1u) : ys[i];
    }
    return CausalPair(SymbolSequence(Alphabet(2), std::move(xs)),
                      SymbolSequence(Alphabet(2), std::move(ys)));
}

CausalPair iid_pair(double q, bool copy, std::size_t n, std::uint64_t seed) {
    require_prob(q, "iid_pair: q");
    if (n == 0) throw std::invalid_argument("iid_pair: n must be positive");
    std::mt19937_64 xeng = seeded_engine(seed, 0);
    std::mt19937_64 yeng = seeded_engine(seed, 1);
    std::vector<Symbol> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = bernoulli(xeng, q) ? 1 : 0;
        ys[i] = copy ? xs[i] : (bernoulli(yeng, q) ? 1 : 0);
    }
    return CausalPair(SymbolSequence(Alphabet(2), std::move(xs)),
                      SymbolSequence(Alphabet(2), std::move(ys)));
}

CausalPair generate(const SourceConfig& config) {
    if (config.n == 0) throw std::invalid_argument("generate: n must be positive");
    return std::visit(
        [&](const auto& v) -> CausalPair {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MarkovBscConfig>) {
                SymbolSequence x = gen_markov_binary(v.p, config.n, config.seed);
                SymbolSequence y = bsc(x, v.eps, config.seed);
                return CausalPair(std::move(x), std::move(y));
            } else if constexpr (std::is_same_v<T, IsiDelayConfig>) {
                SymbolSequence x = gen_markov_binary(v.p, config.n, config.seed);
                SymbolSequence y = isi_delay_channel(x, v.delay, v.eps, config.seed);
                return CausalPair(std::move(x), std::move(y));
            } else if constexpr (std::is_same_v<T, CoupledBscConfig>) {
                return coupled_bsc_system(v.alpha, v.beta, config.n, config.seed);
            } else {
                return iid_pair(v.q, v.copy, config.n, config.seed);
            }
        },
        config.variant);
}

}  // namespace ctwdi
