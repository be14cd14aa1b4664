#pragma once

#include <functional>
#include <iosfwd>
#include <memory>

#include "ctwdi/core.hpp"

namespace ctwdi {

/// Krichevsky-Trofimov sequential estimate: probability of seeing symbol q
/// next given per-symbol counts, (counts[q] + 1/2) / (total + M/2). Over all
/// q these share one denominator and sum to one.
double kt_sequential(std::span<const std::uint64_t> counts, Symbol q);

/// One node of a context tree: per-symbol counts for the node's context,
/// the KT estimate and the weighted probability of everything emitted here,
/// both held in base-2 log domain. Children are allocated on first visit;
/// an absent child has processed nothing and contributes probability 1.
class ContextTreeNode {
  public:
    explicit ContextTreeNode(std::uint32_t arity);

    std::span<const std::uint64_t> counts() const { return m_counts; }
    std::uint64_t total_count() const;
    LogProb log_pe() const { return m_log_pe; }
    LogProb log_pw() const { return m_log_pw; }
    const ContextTreeNode* child(Symbol s) const { return m_children[s].get(); }

  private:
    friend class ContextTree;

    ContextTreeNode* ensure_child(Symbol s);
    std::unique_ptr<ContextTreeNode> clone() const;
    double children_log_pw_sum() const;

    std::vector<std::uint64_t> m_counts;
    std::vector<std::unique_ptr<ContextTreeNode>> m_children;
    LogProb m_log_pe = LogProb::one();
    LogProb m_log_pw = LogProb::one();
};

/// Bounded-depth context-tree weighting over an M-ary alphabet.
///
/// The root branches on the most recent symbol, a depth-k node on the k-th
/// most recent, so the node reached by "1" from the root holds the counts of
/// symbols emitted right after a 1. Updates walk the context path from the
/// deepest node back to the root, refreshing the KT estimate and the weighted
/// probability P_w = 1/2 P_e + 1/2 prod(children P_w) at each node; a leaf at
/// full depth keeps P_w = P_e.
///
/// A tree is a sequential state machine: one writer applies updates in
/// order. Distinct trees may be updated concurrently.
class ContextTree {
  public:
    ContextTree(Alphabet alphabet, std::uint32_t depth);

    ContextTree(const ContextTree& other);
    ContextTree& operator=(const ContextTree& other);
    ContextTree(ContextTree&&) noexcept = default;
    ContextTree& operator=(ContextTree&&) noexcept = default;

    /// Account for one symbol emitted with the given context
    /// (context[0] = most recent preceding symbol; needs depth() entries).
    void update(Symbol symbol, std::span<const Symbol> context);

    /// Conditional pmf of the next symbol given the context. Mixes the KT
    /// predictions of the nodes on the context path through their beta
    /// weights; equal to the ratio of weighted root probabilities before and
    /// after a hypothetical update.
    Pmf predict(std::span<const Symbol> context) const;

    /// log2 of the probability assigned to everything processed so far.
    LogProb assignment_log_prob() const { return m_root->log_pw(); }

    std::uint64_t symbols_seen() const { return m_symbols_seen; }
    Alphabet alphabet() const { return m_alphabet; }
    std::uint32_t depth() const { return m_depth; }
    const ContextTreeNode& root() const { return *m_root; }

    /// Preorder text dump (context path, counts, log_pe, log_pw), one node
    /// per line, deterministic for a given sequence of updates.
    void dump(std::ostream& os) const;

  private:
    double beta_mix_weight(const ContextTreeNode& node) const;
    void check_context(std::span<const Symbol> context) const;

    Alphabet m_alphabet;
    std::uint32_t m_depth;
    std::uint64_t m_symbols_seen = 0;
    std::unique_ptr<ContextTreeNode> m_root;
};

/// Sequential mixture of a base assignment with the uniform pmf: at step n
/// the prediction is a_n * uniform + (1 - a_n) * base, a_n in (0, 1]. With
/// the default a_n = 1/n the mixture keeps every conditional bounded away
/// from zero while inheriting the base assignment's asymptotics.
class MixtureAssignment {
  public:
    using WeightFn = std::function<double(std::uint64_t)>;

    explicit MixtureAssignment(ContextTree base, WeightFn weight = reciprocal_weight());

    static WeightFn reciprocal_weight();

    Pmf predict(std::span<const Symbol> context) const;
    void update(Symbol symbol, std::span<const Symbol> context);

    const ContextTree& base() const { return m_base; }

  private:
    ContextTree m_base;
    WeightFn m_weight;
};

}  // namespace ctwdi
