#include "ctwdi/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ctwdi {

namespace {
constexpr double kSumTolerance = 1e-9;
}

Alphabet::Alphabet(std::uint32_t size) : m_size(size) {
    if (size < 2) {
        throw std::invalid_argument("alphabet size must be at least 2, got " +
                                    std::to_string(size));
    }
}

LogProb LogProb::from_prob(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0, 1]");
    if (p == 0.0) return impossible();
    return {std::log2(p)};
}

double LogProb::prob() const {
    return is_impossible() ? 0.0 : std::exp2(bits);
}

LogProb log_add(LogProb a, LogProb b) {
    if (a.is_impossible()) return b;
    if (b.is_impossible()) return a;
    const double hi = std::max(a.bits, b.bits);
    const double lo = std::min(a.bits, b.bits);
    if (lo - hi < -60.0) return {hi};
    return {hi + std::log2(1.0 + std::exp2(lo - hi))};
}

SymbolSequence::SymbolSequence(Alphabet alphabet, std::vector<Symbol> data)
    : m_alphabet(alphabet), m_data(std::move(data)) {
    for (Symbol s : m_data) {
        if (!m_alphabet.contains(s)) {
            throw std::invalid_argument("symbol " + std::to_string(s) +
                                        " outside alphabet of size " +
                                        std::to_string(m_alphabet.size()));
        }
    }
}

Pmf::Pmf(Alphabet alphabet, std::vector<double> weights)
    : m_alphabet(alphabet), m_weights(std::move(weights)) {
    if (m_weights.size() != m_alphabet.size()) {
        throw std::invalid_argument("pmf size does not match alphabet");
    }
    double sum = 0.0;
    for (double w : m_weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("pmf weight is negative or NaN");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("pmf weights sum to " + std::to_string(sum));
    }
}

Pmf Pmf::uniform(Alphabet alphabet) {
    return Pmf(alphabet, std::vector<double>(alphabet.size(), 1.0 / alphabet.size()));
}

double Pmf::entropy_bits() const {
    double h = 0.0;
    for (double w : m_weights) {
        if (w > 0.0) h -= w * std::log2(w);
    }
    return h;
}

double Pmf::min_weight() const {
    return *std::min_element(m_weights.begin(), m_weights.end());
}

double kl_divergence_bits(const Pmf& p, const Pmf& q) {
    if (!(p.alphabet() == q.alphabet())) {
        throw std::invalid_argument("kl_divergence_bits: alphabet mismatch");
    }
    double d = 0.0;
    for (Symbol s = 0; s < p.alphabet().size(); ++s) {
        const double ps = p[s];
        if (ps <= 0.0) continue;
        const double qs = q[s];
        if (qs <= 0.0) throw std::logic_error("kl_divergence_bits: q has zero mass where p > 0");
        d += ps * std::log2(ps / qs);
    }
    // mathematically >= 0; absorb rounding noise, reject anything larger
    if (d < 0.0) {
        if (d < -kSumTolerance) throw std::logic_error("kl_divergence_bits: negative divergence");
        d = 0.0;
    }
    return d;
}

JointPmf::JointPmf(Alphabet x_alphabet, Alphabet y_alphabet, std::vector<double> weights)
    : m_x(x_alphabet), m_y(y_alphabet), m_weights(std::move(weights)) {
    if (m_weights.size() != static_cast<std::size_t>(m_x.size()) * m_y.size()) {
        throw std::invalid_argument("joint pmf size does not match alphabets");
    }
    double sum = 0.0;
    for (double w : m_weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("joint pmf weight is negative or NaN");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("joint pmf weights sum to " + std::to_string(sum));
    }
}

JointPmf JointPmf::from_flat(const Pmf& flat, Alphabet x_alphabet, Alphabet y_alphabet) {
    if (flat.alphabet().size() != x_alphabet.size() * y_alphabet.size()) {
        throw std::invalid_argument("flat pmf is not over the product alphabet");
    }
    return JointPmf(x_alphabet, y_alphabet,
                    std::vector<double>(flat.weights().begin(), flat.weights().end()));
}

Pmf JointPmf::marginal_x() const {
    std::vector<double> m(m_x.size(), 0.0);
    for (Symbol x = 0; x < m_x.size(); ++x) {
        for (Symbol y = 0; y < m_y.size(); ++y) m[x] += at(x, y);
    }
    return Pmf(m_x, std::move(m));
}

Pmf JointPmf::marginal_y() const {
    std::vector<double> m(m_y.size(), 0.0);
    for (Symbol x = 0; x < m_x.size(); ++x) {
        for (Symbol y = 0; y < m_y.size(); ++y) m[y] += at(x, y);
    }
    return Pmf(m_y, std::move(m));
}

SymbolSequence pair_symbols(const SymbolSequence& x, const SymbolSequence& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pair_symbols: sequences have different lengths");
    }
    const std::uint64_t product =
        static_cast<std::uint64_t>(x.alphabet().size()) * y.alphabet().size();
    if (product > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("pair_symbols: product alphabet too large");
    }
    const std::uint32_t my = y.alphabet().size();
    std::vector<Symbol> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * my + y[i];
    return SymbolSequence(Alphabet(static_cast<std::uint32_t>(product)), std::move(z));
}

std::pair<SymbolSequence, SymbolSequence> unpair_symbols(const SymbolSequence& z,
                                                         Alphabet x_alphabet,
                                                         Alphabet y_alphabet) {
    if (z.alphabet().size() != x_alphabet.size() * y_alphabet.size()) {
        throw std::invalid_argument("unpair_symbols: alphabet sizes do not factor the input");
    }
    const std::uint32_t my = y_alphabet.size();
    std::vector<Symbol> xs(z.size()), ys(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        xs[i] = z[i] / my;
        ys[i] = z[i] % my;
    }
    return {SymbolSequence(x_alphabet, std::move(xs)),
            SymbolSequence(y_alphabet, std::move(ys))};
}

SymbolSequence quantize_returns(std::span<const double> values, double threshold,
                                ReturnKind kind) {
    if (values.empty()) throw std::invalid_argument("quantize_returns: empty input");
    if (!(threshold > 0.0)) throw std::invalid_argument("quantize_returns: threshold must be > 0");
    std::vector<Symbol> out;
    out.reserve(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) {
            throw std::invalid_argument("quantize_returns: nonpositive value at index " +
                                        std::to_string(i));
        }
        if (i == 0) continue;
        const double r = kind == ReturnKind::simple
                             ? (values[i] - values[i - 1]) / values[i - 1]
                             : std::log(values[i] / values[i - 1]);
        Symbol s = 1;
        if (r < -threshold) s = 0;
        else if (r > threshold) s = 2;
        out.push_back(s);
    }
    return SymbolSequence(Alphabet(3), std::move(out));
}

Pmf normalize_log_pmf(std::span<const LogProb> logs) {
    if (logs.empty()) throw std::invalid_argument("normalize_log_pmf: empty input");
    double hi = -std::numeric_limits<double>::infinity();
    for (const LogProb& l : logs) hi = std::max(hi, l.bits);
    if (hi == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("normalize_log_pmf: all entries are log 0");
    }
    std::vector<double> w(logs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        w[i] = logs[i].is_impossible() ? 0.0 : std::exp2(logs[i].bits - hi);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return Pmf(Alphabet(static_cast<std::uint32_t>(logs.size())), std::move(w));
}

}  // namespace ctwdi
