#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "ctwdi/core.hpp"
#include "ctwdi/estimators.hpp"

namespace ctwdi {

/// Stream-split seeding: every noise source inside a generator draws from
/// its own mt19937_64 engine, seeded by pushing (seed, stream id) through
/// the SplitMix64 finalizer. Identical (seed, stream) always reproduces the
/// same draws; mt19937_64 output is fixed by the standard, so sequences are
/// portable across platforms.
///
/// Stream ids: 0 source process, 1 channel noise, 2 backward-channel noise.
std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& eng);

bool bernoulli(std::mt19937_64& eng, double p);

/// Symmetric binary Markov chain: first symbol Bernoulli(1/2) (stationary),
/// then flips with probability p.
SymbolSequence gen_markov_binary(double p, std::size_t n, std::uint64_t seed);

/// Binary symmetric channel: each symbol flipped independently with
/// probability eps.
SymbolSequence bsc(const SymbolSequence& x, double eps, std::uint64_t seed);

/// Two-tap channel with delay: y_i = x_{i-delay} xor x_{i-delay-1} xor w_i,
/// w_i ~ Bernoulli(eps), indices before the start padded with 0.
SymbolSequence isi_delay_channel(const SymbolSequence& x, std::uint32_t delay, double eps,
                                 std::uint64_t seed);

/// Two-way system: x_1 ~ Bernoulli(1/2); y_i = x_i through BSC(alpha);
/// x_{i+1} = y_i through BSC(beta).
CausalPair coupled_bsc_system(double alpha, double beta, std::size_t n, std::uint64_t seed);

/// Independent or copied i.i.d. Bernoulli(q) pair.
CausalPair iid_pair(double q, bool copy, std::size_t n, std::uint64_t seed);

struct MarkovBscConfig {
    double p = 0.3;
    double eps = 0.2;
};
struct IsiDelayConfig {
    double p = 0.3;
    std::uint32_t delay = 2;
    double eps = 0.1;
};
struct CoupledBscConfig {
    double alpha = 0.1;
    double beta = 0.2;
};
struct IidPairConfig {
    double q = 0.5;
    bool copy = false;
};

/// Parameters of one synthetic joint process.
struct SourceConfig {
    std::variant<MarkovBscConfig, IsiDelayConfig, CoupledBscConfig, IidPairConfig> variant;
    std::size_t n = 0;
    std::uint64_t seed = 1;
};

/// Generate the (source, observation) pair described by the config.
CausalPair generate(const SourceConfig& config);

}  // namespace ctwdi
