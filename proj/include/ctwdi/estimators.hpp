#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ctwdi/core.hpp"

namespace ctwdi {

/// The four directed-information estimators. All are driven by the same
/// sequential predictions: a context tree over the paired super alphabet
/// plus an independently trained tree over the effect sequence alone.
///
///   logloss         difference of causally conditional log-loss rates
///   entropy         difference of predicted conditional-entropy functionals
///   conditional_kl  per-step divergence between the effect prediction with
///                   and without the cause's present symbol; nonnegative
///   joint_kl        per-step divergence of the joint prediction from the
///                   product of its cause-marginal and the separate effect
///                   prediction; nonnegative
enum class EstimatorMethod : int {
    logloss = 1,
    entropy = 2,
    conditional_kl = 3,
    joint_kl = 4,
};

EstimatorMethod method_from_int(int m);

/// How the first prediction contexts are formed: consume the leading depth
/// symbols of the input as context (they are not predicted), or predict from
/// the first symbol with an all-zeros context.
enum class InitialContext {
    from_data,
    zero_pad,
};

/// Two aligned finite-alphabet sequences with fixed roles: x is the
/// candidate cause, y the candidate effect.
struct CausalPair {
    SymbolSequence x;
    SymbolSequence y;

    CausalPair(SymbolSequence cause, SymbolSequence effect);
    std::size_t size() const { return x.size(); }
};

/// Running record of an estimate as the prefix grows. partials[k] is the
/// estimate over the first skipped + k + 1 symbols, normalized by the number
/// of predicted steps so far; final_bits is partials.back().
struct EstimatorTrace {
    EstimatorMethod method{};
    std::uint32_t depth = 0;
    std::size_t skipped = 0;
    std::vector<double> partials;
    double final_bits = 0.0;

    std::size_t prefix_length(std::size_t k) const { return skipped + k + 1; }
};

/// CSV rows (i, estimate_bits) followed by a summary comment line.
void write_trace_csv(std::ostream& os, const EstimatorTrace& trace);

/// Conditional entropy H(Y|X) in bits of a joint pmf, with 0 log 0 = 0 and
/// rows of zero x-mass contributing nothing. Lies in [0, log2 |Y|].
double conditional_entropy_bits(const JointPmf& p);

/// Bayes-condition a joint prediction on the observed x: the y-slice at x,
/// renormalized by the x-marginal. Errors on a zero marginal (unreachable
/// for context-tree predictions, whose conditionals are bounded below).
Pmf condition_on_x(const JointPmf& joint, Symbol x);

/// Causally conditional log-loss rate: -(1/(n-D)) sum log2 Q(y_i | y^{i-1}, x^i),
/// each conditional obtained by conditioning the joint prediction on x_i.
double logloss_causal_entropy_rate(const CausalPair& pair, std::uint32_t depth,
                                   InitialContext init = InitialContext::from_data);

/// Plain log-loss entropy rate of one sequence under its own context tree.
double logloss_entropy_rate(const SymbolSequence& seq, std::uint32_t depth,
                            InitialContext init = InitialContext::from_data);

/// Mean conditional-entropy functional of the joint predictions,
/// (1/(n-D)) sum f(Q(x_i, y_i | past)); always within [0, log2 |Y|].
double predictive_causal_entropy_rate(const CausalPair& pair, std::uint32_t depth,
                                      InitialContext init = InitialContext::from_data);

/// Mean entropy of the single-sequence predictions.
double predictive_entropy_rate(const SymbolSequence& seq, std::uint32_t depth,
                               InitialContext init = InitialContext::from_data);

/// Estimate the directed information rate from pair.x to pair.y in bits.
EstimatorTrace estimate_di(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                           InitialContext init = InitialContext::from_data);

/// Estimate the reverse directed information rate (1/n) I(Y^{n-1} -> X^n) by
/// running estimate_di on (W, X) where W is Y delayed one step, W_1 = 0.
EstimatorTrace reverse_di(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                          InitialContext init = InitialContext::from_data);

/// Mutual information rate estimate: estimate_di + reverse_di.
double mutual_info(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                   InitialContext init = InitialContext::from_data);

/// Shifted directed information rate (1/(n-d)) I(Y_{d+1}^n -> X^{n-d}):
/// the chosen estimator run on (Y advanced by d, X truncated to n-d).
/// Positive once the shift d reaches the channel delay.
double shifted_di(const CausalPair& pair, std::uint32_t d, EstimatorMethod method,
                  std::uint32_t depth, InitialContext init = InitialContext::from_data);

/// The joint_kl estimate computed along its algebraically equivalent split:
/// a cross-entropy term minus the predictive causal entropy. Kept as a
/// second, independently coded route for cross-checking.
double joint_kl_cross_entropy_form(const CausalPair& pair, std::uint32_t depth,
                                   InitialContext init = InitialContext::from_data);

}  // namespace ctwdi
