#pragma once

#include <cstdint>
#include <vector>

#include "ctwdi/core.hpp"

namespace ctwdi {

/// Binary entropy in bits, H_b(p) = -p log2 p - (1-p) log2(1-p), 0 at the
/// endpoints.
double binary_entropy(double p);

/// Closed-form rate of the directed information from the noisy observation
/// back to a symmetric binary Markov source with flip probability p observed
/// through a binary symmetric channel with crossover eps.
double markov_bsc_rate(double p, double eps);

struct CoupledBscRates {
    double di;       // forward rate, H_b(a(1-b) + (1-a)b) - H_b(a)
    double reverse;  // backward rate, same mixture entropy minus H_b(b)
    double mi;       // di + reverse
};

/// Closed-form rates of the two-way system where Y_i = X_i through BSC(alpha)
/// and X_{i+1} = Y_i through BSC(beta); alpha, beta in [0, 1/2].
CoupledBscRates coupled_bsc_rates(double alpha, double beta);

/// Explicit next-step kernel P(x_i, y_i | previous m joint symbols), given as
/// transition rows over the packed m-step state, plus the distribution of the
/// first m-step block. Symbols pack as z = x * |Y| + y, oldest first.
struct JointProcessModel {
    Alphabet x_alphabet;
    Alphabet y_alphabet;
    std::uint32_t memory = 1;
    std::vector<std::vector<double>> kernel;  // kernel[state][z]
    std::vector<double> initial;              // over packed z^memory

    std::uint32_t super_size() const { return x_alphabet.size() * y_alphabet.size(); }
    void validate() const;  // rows and initial sum to one within 1e-12
};

/// Relabel the roles: the returned model describes the pair (Y, X).
JointProcessModel swap_roles(const JointProcessModel& m);

/// Stationary distribution of a row-stochastic transition matrix, solved by
/// power iteration to 1e-14.
std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& transition);

/// Model builders for the synthetic systems (memory 1, stationary starts).
JointProcessModel markov_bsc_model(double p, double eps);
JointProcessModel coupled_bsc_model(double alpha, double beta);
JointProcessModel iid_pair_model(double q, bool copy);

/// Exact finite-n information quantities of a bounded-memory joint process,
/// all normalized by n and in bits. Enumerates every joint sequence, chaining
/// probabilities in log domain; feasible while (|X||Y|)^n <= 2^24.
struct ExactDi {
    double di;             // I(X^n -> Y^n) / n
    double reverse;        // I(Y^{n-1} -> X^n) / n
    double mi;             // I(X^n ; Y^n) / n
    double di_delayed;     // I(X^{n-1} -> Y^n) / n
    double instantaneous;  // (1/n) sum_i I(X_i ; Y_i | X^{i-1}, Y^{i-1})
    double hx_rate;        // H(X^n) / n
    double hy_rate;        // H(Y^n) / n
};

ExactDi exact_di(const JointProcessModel& model, std::uint32_t n);

/// Pointwise redundancy budget C5 log2(n) + C6 of context-tree weighting on
/// a tree source with gamma-ary alphabet and S states:
/// C5 = (gamma-1) S / 2, C6 = C5 log2(1/S) + S (gamma/(gamma-1) + log2 gamma)
/// - 1/(gamma-1).
double ctw_redundancy_bound(std::uint32_t gamma, std::uint32_t states, std::uint64_t n);

}  // namespace ctwdi
