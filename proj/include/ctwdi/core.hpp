#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace ctwdi {

using Symbol = std::uint32_t;

/// Finite alphabet {0, 1, ..., size()-1}. Degenerate alphabets (size < 2)
/// are rejected: every estimation path needs at least two symbols.
class Alphabet {
  public:
    explicit Alphabet(std::uint32_t size);

    std::uint32_t size() const { return m_size; }
    bool contains(Symbol s) const { return s < m_size; }
    bool operator==(const Alphabet&) const = default;

  private:
    std::uint32_t m_size;
};

/// Base-2 logarithm of a probability. -inf encodes probability zero, so a
/// chain of per-step factors never underflows even when the linear-domain
/// product would.
struct LogProb {
    double bits = 0.0;

    static LogProb one() { return {0.0}; }
    static LogProb impossible() { return {-std::numeric_limits<double>::infinity()}; }
    static LogProb from_prob(double p);

    double prob() const;
    bool is_impossible() const { return bits == -std::numeric_limits<double>::infinity(); }

    LogProb operator*(LogProb o) const { return {bits + o.bits}; }
    LogProb& operator*=(LogProb o) {
        bits += o.bits;
        return *this;
    }
};

/// log2(2^a + 2^b), shifted by the larger exponent before exponentiating.
LogProb log_add(LogProb a, LogProb b);

/// Finite-alphabet time series. Every element is validated against the
/// alphabet at construction.
class SymbolSequence {
  public:
    SymbolSequence(Alphabet alphabet, std::vector<Symbol> data);

    const Alphabet& alphabet() const { return m_alphabet; }
    std::size_t size() const { return m_data.size(); }
    bool empty() const { return m_data.empty(); }
    Symbol operator[](std::size_t i) const { return m_data[i]; }
    std::span<const Symbol> symbols() const { return m_data; }

    bool operator==(const SymbolSequence&) const = default;

  private:
    Alphabet m_alphabet;
    std::vector<Symbol> m_data;
};

/// Probability vector over an alphabet: entries >= 0, summing to one
/// within 1e-9. Constructed only from already-normalized weights.
class Pmf {
  public:
    Pmf(Alphabet alphabet, std::vector<double> weights);

    static Pmf uniform(Alphabet alphabet);

    const Alphabet& alphabet() const { return m_alphabet; }
    double operator[](Symbol s) const { return m_weights[s]; }
    std::span<const double> weights() const { return m_weights; }

    double entropy_bits() const;
    double min_weight() const;

  private:
    Alphabet m_alphabet;
    std::vector<double> m_weights;
};

/// D(p || q) in bits; requires q > 0 wherever p > 0.
double kl_divergence_bits(const Pmf& p, const Pmf& q);

/// Joint probability table over a product alphabet, row-major in x.
class JointPmf {
  public:
    JointPmf(Alphabet x_alphabet, Alphabet y_alphabet, std::vector<double> weights);

    /// Reinterpret a pmf over the paired super alphabet (index x*|Y| + y).
    static JointPmf from_flat(const Pmf& flat, Alphabet x_alphabet, Alphabet y_alphabet);

    const Alphabet& x_alphabet() const { return m_x; }
    const Alphabet& y_alphabet() const { return m_y; }
    double at(Symbol x, Symbol y) const { return m_weights[x * m_y.size() + y]; }
    std::span<const double> weights() const { return m_weights; }

    Pmf marginal_x() const;
    Pmf marginal_y() const;

  private:
    Alphabet m_x;
    Alphabet m_y;
    std::vector<double> m_weights;
};

/// Pack two aligned sequences into one sequence of super symbols
/// z_i = x_i * |Y| + y_i over the product alphabet.
SymbolSequence pair_symbols(const SymbolSequence& x, const SymbolSequence& y);

/// Inverse of pair_symbols.
std::pair<SymbolSequence, SymbolSequence> unpair_symbols(const SymbolSequence& z,
                                                         Alphabet x_alphabet,
                                                         Alphabet y_alphabet);

enum class ReturnKind {
    simple,  // (v_i - v_{i-1}) / v_{i-1}
    log,     // ln(v_i / v_{i-1})
};

/// Ternary quantization of a positive series: 0 if the per-step return is
/// below -threshold, 2 if above +threshold, 1 otherwise. Comparisons are
/// strict, so a return of exactly +-threshold maps to the middle symbol.
SymbolSequence quantize_returns(std::span<const double> values, double threshold,
                                ReturnKind kind = ReturnKind::simple);

/// exp2 of max-shifted logs, renormalized to sum to one. Errors if every
/// entry is log 0.
Pmf normalize_log_pmf(std::span<const LogProb> logs);

}  // namespace ctwdi
