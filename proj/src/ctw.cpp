#include "ctwdi/ctw.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ctwdi {

namespace {

// log2 of the KT update factor (counts[q] + 1/2) / (total + M/2)
double kt_step_log2(std::span<const std::uint64_t> counts, std::uint64_t total, Symbol q) {
    const double m = static_cast<double>(counts.size());
    return std::log2((static_cast<double>(counts[q]) + 0.5) /
                     (static_cast<double>(total) + 0.5 * m));
}

// log2(1/2 * 2^a + 1/2 * 2^b)
double half_sum_log2(double a, double b) {
    return log_add(LogProb{a}, LogProb{b}).bits - 1.0;
}

}  // namespace

double kt_sequential(std::span<const std::uint64_t> counts, Symbol q) {
    if (q >= counts.size()) throw std::out_of_range("kt_sequential: symbol outside alphabet");
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    const double m = static_cast<double>(counts.size());
    return (static_cast<double>(counts[q]) + 0.5) / (static_cast<double>(total) + 0.5 * m);
}

ContextTreeNode::ContextTreeNode(std::uint32_t arity)
    : m_counts(arity, 0), m_children(arity) {}

std::uint64_t ContextTreeNode::total_count() const {
    return std::accumulate(m_counts.begin(), m_counts.end(), std::uint64_t{0});
}

ContextTreeNode* ContextTreeNode::ensure_child(Symbol s) {
    if (!m_children[s]) {
        m_children[s] = std::make_unique<ContextTreeNode>(
            static_cast<std::uint32_t>(m_counts.size()));
    }
    return m_children[s].get();
}

std::unique_ptr<ContextTreeNode> ContextTreeNode::clone() const {
    auto copy = std::make_unique<ContextTreeNode>(static_cast<std::uint32_t>(m_counts.size()));
    copy->m_counts = m_counts;
    copy->m_log_pe = m_log_pe;
    copy->m_log_pw = m_log_pw;
    for (std::size_t s = 0; s < m_children.size(); ++s) {
        if (m_children[s]) copy->m_children[s] = m_children[s]->clone();
    }
    return copy;
}

double ContextTreeNode::children_log_pw_sum() const {
    double sum = 0.0;  // absent child: log2(1)
    for (const auto& c : m_children) {
        if (c) sum += c->m_log_pw.bits;
    }
    return sum;
}

ContextTree::ContextTree(Alphabet alphabet, std::uint32_t depth)
    : m_alphabet(alphabet),
      m_depth(depth),
      m_root(std::make_unique<ContextTreeNode>(alphabet.size())) {}

ContextTree::ContextTree(const ContextTree& other)
    : m_alphabet(other.m_alphabet),
      m_depth(other.m_depth),
      m_symbols_seen(other.m_symbols_seen),
      m_root(other.m_root->clone()) {}

ContextTree& ContextTree::operator=(const ContextTree& other) {
    if (this != &other) {
        m_alphabet = other.m_alphabet;
        m_depth = other.m_depth;
        m_symbols_seen = other.m_symbols_seen;
        m_root = other.m_root->clone();
    }
    return *this;
}

void ContextTree::check_context(std::span<const Symbol> context) const {
    if (context.size() < m_depth) {
        throw std::invalid_argument("context has " + std::to_string(context.size()) +
                                    " symbols, tree depth is " + std::to_string(m_depth));
    }
    for (std::uint32_t l = 0; l < m_depth; ++l) {
        if (!m_alphabet.contains(context[l])) {
            throw std::invalid_argument("context symbol outside alphabet");
        }
    }
}

void ContextTree::update(Symbol symbol, std::span<const Symbol> context) {
    if (!m_alphabet.contains(symbol)) {
        throw std::invalid_argument("update: symbol outside alphabet");
    }
    check_context(context);

    std::vector<ContextTreeNode*> path(m_depth + 1);
    path[0] = m_root.get();
    for (std::uint32_t l = 0; l < m_depth; ++l) {
        path[l + 1] = path[l]->ensure_child(context[l]);
    }

    // deepest context first, root last
    for (std::uint32_t l = m_depth + 1; l-- > 0;) {
        ContextTreeNode& node = *path[l];
        node.m_log_pe.bits += kt_step_log2(node.m_counts, node.total_count(), symbol);
        node.m_counts[symbol] += 1;
        if (l == m_depth) {
            node.m_log_pw = node.m_log_pe;
        } else {
            node.m_log_pw.bits =
                half_sum_log2(node.m_log_pe.bits, node.children_log_pw_sum());
        }
    }
    ++m_symbols_seen;
}

double ContextTree::beta_mix_weight(const ContextTreeNode& node) const {
    // beta = P_e / prod(children P_w); weight beta / (1 + beta)
    const double log_beta = node.m_log_pe.bits - node.children_log_pw_sum();
    if (log_beta > 50.0) return 1.0;
    if (log_beta < -50.0) return 0.0;
    const double beta = std::exp2(log_beta);
    return beta / (1.0 + beta);
}

Pmf ContextTree::predict(std::span<const Symbol> context) const {
    check_context(context);
    const std::uint32_t m = m_alphabet.size();

    std::vector<const ContextTreeNode*> path;
    path.reserve(m_depth + 1);
    path.push_back(m_root.get());
    for (std::uint32_t l = 0; l < m_depth; ++l) {
        const ContextTreeNode* next = path.back()->child(context[l]);
        if (!next) break;
        path.push_back(next);
    }

    auto kt_predictive = [m](const ContextTreeNode& node) {
        std::vector<double> p(m);
        const double total = static_cast<double>(node.total_count());
        const double denom = total + 0.5 * m;
        for (Symbol q = 0; q < m; ++q) {
            p[q] = (static_cast<double>(node.counts()[q]) + 0.5) / denom;
        }
        return p;
    };

    // predictive of the subtree below the deepest existing node; the part of
    // the path that was never visited predicts uniformly
    std::vector<double> pmf(m, 1.0 / m);
    std::size_t start;
    if (path.size() == static_cast<std::size_t>(m_depth) + 1) {
        pmf = kt_predictive(*path[m_depth]);
        start = m_depth;  // loop begins at depth - 1
    } else {
        start = path.size();  // loop begins at the deepest existing node
    }

    for (std::size_t l = start; l-- > 0;) {
        const ContextTreeNode& node = *path[l];
        const double w = beta_mix_weight(node);
        const std::vector<double> kt = kt_predictive(node);
        for (Symbol q = 0; q < m; ++q) pmf[q] = w * kt[q] + (1.0 - w) * pmf[q];
    }
    return Pmf(m_alphabet, std::move(pmf));
}

namespace {

void dump_node(std::ostream& os, const ContextTreeNode& node, const std::string& label,
               std::uint32_t arity) {
    os << (label.empty() ? "-" : label) << ' ';
    for (std::size_t i = 0; i < node.counts().size(); ++i) {
        if (i) os << ',';
        os << node.counts()[i];
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), " %.12g %.12g\n", node.log_pe().bits, node.log_pw().bits);
    os << buf;
    for (Symbol s = 0; s < arity; ++s) {
        if (const ContextTreeNode* c = node.child(s)) {
            const std::string child_label =
                label.empty() ? std::to_string(s) : label + "." + std::to_string(s);
            dump_node(os, *c, child_label, arity);
        }
    }
}

}  // namespace

void ContextTree::dump(std::ostream& os) const {
    dump_node(os, *m_root, std::string(), m_alphabet.size());
}

MixtureAssignment::MixtureAssignment(ContextTree base, WeightFn weight)
    : m_base(std::move(base)), m_weight(std::move(weight)) {
    if (!m_weight) throw std::invalid_argument("MixtureAssignment: empty weight function");
}

MixtureAssignment::WeightFn MixtureAssignment::reciprocal_weight() {
    return [](std::uint64_t n) { return 1.0 / static_cast<double>(n); };
}

Pmf MixtureAssignment::predict(std::span<const Symbol> context) const {
    const std::uint64_t step = m_base.symbols_seen() + 1;
    const double a = m_weight(step);
    if (!(a > 0.0) || a > 1.0) {
        throw std::domain_error("MixtureAssignment: weight a_n must lie in (0, 1], got " +
                                std::to_string(a));
    }
    const Pmf base = m_base.predict(context);
    const std::uint32_t m = m_base.alphabet().size();
    std::vector<double> w(m);
    for (Symbol q = 0; q < m; ++q) w[q] = a / m + (1.0 - a) * base[q];
    return Pmf(m_base.alphabet(), std::move(w));
}

void MixtureAssignment::update(Symbol symbol, std::span<const Symbol> context) {
    m_base.update(symbol, context);
}

}  // namespace ctwdi
