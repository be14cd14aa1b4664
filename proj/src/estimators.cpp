#include "ctwdi/estimators.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ctwdi/ctw.hpp"

namespace ctwdi {

namespace {

constexpr double kKlNoiseFloor = -1e-9;

void push_context(std::vector<Symbol>& ctx, Symbol s) {
    if (ctx.empty()) return;
    for (std::size_t k = ctx.size() - 1; k > 0; --k) ctx[k] = ctx[k - 1];
    ctx[0] = s;
}

std::vector<Symbol> initial_context(const SymbolSequence& seq, std::uint32_t depth,
                                    InitialContext init) {
    std::vector<Symbol> ctx(depth, 0);
    if (init == InitialContext::from_data) {
        for (std::uint32_t k = 0; k < depth; ++k) ctx[k] = seq[depth - 1 - k];
    }
    return ctx;
}

std::size_t skip_count(std::size_t n, std::uint32_t depth, InitialContext init,
                       const char* op) {
    const std::size_t skip = init == InitialContext::from_data ? depth : 0;
    if (n <= skip) {
        throw std::invalid_argument(std::string(op) + ": sequence length " +
                                    std::to_string(n) + " must exceed context depth " +
                                    std::to_string(depth));
    }
    return skip;
}

// Drives the joint super-symbol tree and the separate effect tree through
// the pair, handing each step the prediction made before the symbols at i
// are revealed. step(i, joint_prediction, y_prediction).
template <typename Step>
void run_pair(const CausalPair& pair, std::uint32_t depth, InitialContext init, Step&& step) {
    const std::size_t n = pair.size();
    const std::size_t skip = skip_count(n, depth, init, "estimate");
    const SymbolSequence z = pair_symbols(pair.x, pair.y);

    ContextTree joint(z.alphabet(), depth);
    ContextTree effect(pair.y.alphabet(), depth);
    std::vector<Symbol> ctx_z = initial_context(z, depth, init);
    std::vector<Symbol> ctx_y = initial_context(pair.y, depth, init);

    for (std::size_t i = skip; i < n; ++i) {
        const Pmf joint_flat = joint.predict(ctx_z);
        const Pmf y_pred = effect.predict(ctx_y);
        const JointPmf jp = JointPmf::from_flat(joint_flat, pair.x.alphabet(),
                                                pair.y.alphabet());
        step(i, jp, y_pred);
        joint.update(z[i], ctx_z);
        effect.update(pair.y[i], ctx_y);
        push_context(ctx_z, z[i]);
        push_context(ctx_y, pair.y[i]);
    }
}

// Single-sequence variant: step(i, prediction).
template <typename Step>
void run_single(const SymbolSequence& seq, std::uint32_t depth, InitialContext init,
                Step&& step) {
    const std::size_t n = seq.size();
    const std::size_t skip = skip_count(n, depth, init, "estimate");
    ContextTree tree(seq.alphabet(), depth);
    std::vector<Symbol> ctx = initial_context(seq, depth, init);
    for (std::size_t i = skip; i < n; ++i) {
        step(i, tree.predict(ctx));
        tree.update(seq[i], ctx);
        push_context(ctx, seq[i]);
    }
}

double clamp_kl(double d, const char* where) {
    if (d < 0.0) {
        if (d < kKlNoiseFloor) {
            throw std::logic_error(std::string(where) + ": negative divergence " +
                                   std::to_string(d));
        }
        return 0.0;
    }
    return d;
}

// D(joint || x_marginal x y_reference) in bits
double joint_product_kl(const JointPmf& jp, const Pmf& y_ref) {
    const Pmf xm = jp.marginal_x();
    double d = 0.0;
    for (Symbol x = 0; x < jp.x_alphabet().size(); ++x) {
        for (Symbol y = 0; y < jp.y_alphabet().size(); ++y) {
            const double p = jp.at(x, y);
            if (p <= 0.0) continue;
            const double q = xm[x] * y_ref[y];
            if (q <= 0.0) throw std::logic_error("joint_kl: reference has zero mass");
            d += p * std::log2(p / q);
        }
    }
    return clamp_kl(d, "joint_kl");
}

}  // namespace

EstimatorMethod method_from_int(int m) {
    if (m < 1 || m > 4) {
        throw std::invalid_argument("estimator method must be 1, 2, 3 or 4, got " +
                                    std::to_string(m));
    }
    return static_cast<EstimatorMethod>(m);
}

CausalPair::CausalPair(SymbolSequence cause, SymbolSequence effect)
    : x(std::move(cause)), y(std::move(effect)) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("CausalPair: sequences have different lengths");
    }
}

double conditional_entropy_bits(const JointPmf& p) {
    double h = 0.0;
    for (Symbol x = 0; x < p.x_alphabet().size(); ++x) {
        double row = 0.0;
        for (Symbol y = 0; y < p.y_alphabet().size(); ++y) row += p.at(x, y);
        if (row <= 0.0) continue;
        for (Symbol y = 0; y < p.y_alphabet().size(); ++y) {
            const double v = p.at(x, y);
            if (v > 0.0) h -= v * std::log2(v / row);
        }
    }
    return clamp_kl(h, "conditional_entropy_bits");
}

Pmf condition_on_x(const JointPmf& joint, Symbol x) {
    if (!joint.x_alphabet().contains(x)) {
        throw std::invalid_argument("condition_on_x: symbol outside alphabet");
    }
    double row = 0.0;
    for (Symbol y = 0; y < joint.y_alphabet().size(); ++y) row += joint.at(x, y);
    if (row <= 0.0) throw std::logic_error("condition_on_x: zero x-marginal");
    std::vector<double> w(joint.y_alphabet().size());
    for (Symbol y = 0; y < joint.y_alphabet().size(); ++y) w[y] = joint.at(x, y) / row;
    return Pmf(joint.y_alphabet(), std::move(w));
}

double logloss_causal_entropy_rate(const CausalPair& pair, std::uint32_t depth,
                                   InitialContext init) {
    double acc = 0.0;
    std::size_t steps = 0;
    run_pair(pair, depth, init, [&](std::size_t i, const JointPmf& jp, const Pmf&) {
        acc -= std::log2(condition_on_x(jp, pair.x[i])[pair.y[i]]);
        ++steps;
    });
    return acc / static_cast<double>(steps);
}

double logloss_entropy_rate(const SymbolSequence& seq, std::uint32_t depth,
                            InitialContext init) {
    double acc = 0.0;
    std::size_t steps = 0;
    run_single(seq, depth, init, [&](std::size_t i, const Pmf& pred) {
        acc -= std::log2(pred[seq[i]]);
        ++steps;
    });
    return acc / static_cast<double>(steps);
}

double predictive_causal_entropy_rate(const CausalPair& pair, std::uint32_t depth,
                                      InitialContext init) {
    double acc = 0.0;
    std::size_t steps = 0;
    run_pair(pair, depth, init, [&](std::size_t, const JointPmf& jp, const Pmf&) {
        acc += conditional_entropy_bits(jp);
        ++steps;
    });
    return acc / static_cast<double>(steps);
}

double predictive_entropy_rate(const SymbolSequence& seq, std::uint32_t depth,
                               InitialContext init) {
    double acc = 0.0;
    std::size_t steps = 0;
    run_single(seq, depth, init, [&](std::size_t, const Pmf& pred) {
        acc += pred.entropy_bits();
        ++steps;
    });
    return acc / static_cast<double>(steps);
}

EstimatorTrace estimate_di(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                           InitialContext init) {
    EstimatorTrace trace;
    trace.method = method;
    trace.depth = depth;
    trace.skipped = skip_count(pair.size(), depth, init, "estimate_di");
    trace.partials.reserve(pair.size() - trace.skipped);

    double acc = 0.0;
    std::size_t steps = 0;
    run_pair(pair, depth, init, [&](std::size_t i, const JointPmf& jp, const Pmf& y_pred) {
        double term = 0.0;
        switch (method) {
            case EstimatorMethod::logloss: {
                const Pmf cond = condition_on_x(jp, pair.x[i]);
                term = std::log2(cond[pair.y[i]] / y_pred[pair.y[i]]);
                break;
            }
            case EstimatorMethod::entropy:
                term = y_pred.entropy_bits() - conditional_entropy_bits(jp);
                break;
            case EstimatorMethod::conditional_kl:
                term = kl_divergence_bits(condition_on_x(jp, pair.x[i]), y_pred);
                break;
            case EstimatorMethod::joint_kl:
                // the divergence terms are indexed one step ahead of the
                // other estimators, so the first prediction has no term and
                // the one past the end of the data is dropped
                term = steps == 0 ? 0.0 : joint_product_kl(jp, y_pred);
                break;
        }
        acc += term;
        ++steps;
        trace.partials.push_back(acc / static_cast<double>(steps));
    });
    trace.final_bits = trace.partials.back();
    return trace;
}

EstimatorTrace reverse_di(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                          InitialContext init) {
    const std::size_t n = pair.size();
    std::vector<Symbol> delayed(n);
    delayed[0] = 0;
    for (std::size_t i = 1; i < n; ++i) delayed[i] = pair.y[i - 1];
    CausalPair flipped(SymbolSequence(pair.y.alphabet(), std::move(delayed)), pair.x);
    return estimate_di(flipped, method, depth, init);
}

double mutual_info(const CausalPair& pair, EstimatorMethod method, std::uint32_t depth,
                   InitialContext init) {
    return estimate_di(pair, method, depth, init).final_bits +
           reverse_di(pair, method, depth, init).final_bits;
}

double shifted_di(const CausalPair& pair, std::uint32_t d, EstimatorMethod method,
                  std::uint32_t depth, InitialContext init) {
    const std::size_t n = pair.size();
    const std::size_t skip = init == InitialContext::from_data ? depth : 0;
    if (n <= static_cast<std::size_t>(d) + skip) {
        throw std::invalid_argument("shifted_di: need n > d + depth");
    }
    const std::size_t m = n - d;
    std::vector<Symbol> advanced(m), truncated(m);
    for (std::size_t i = 0; i < m; ++i) {
        advanced[i] = pair.y[i + d];
        truncated[i] = pair.x[i];
    }
    CausalPair realigned(SymbolSequence(pair.y.alphabet(), std::move(advanced)),
                         SymbolSequence(pair.x.alphabet(), std::move(truncated)));
    return estimate_di(realigned, method, depth, init).final_bits;
}

double joint_kl_cross_entropy_form(const CausalPair& pair, std::uint32_t depth,
                                   InitialContext init) {
    double cross_acc = 0.0;
    double cond_acc = 0.0;
    std::size_t steps = 0;
    run_pair(pair, depth, init, [&](std::size_t, const JointPmf& jp, const Pmf& y_pred) {
        if (steps > 0) {
            const Pmf ym = jp.marginal_y();
            for (Symbol y = 0; y < y_pred.alphabet().size(); ++y) {
                if (ym[y] > 0.0) cross_acc -= ym[y] * std::log2(y_pred[y]);
            }
            cond_acc += conditional_entropy_bits(jp);
        }
        ++steps;
    });
    return (cross_acc - cond_acc) / static_cast<double>(steps);
}

void write_trace_csv(std::ostream& os, const EstimatorTrace& trace) {
    os << "i,estimate_bits\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.partials.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.9g\n", trace.prefix_length(k),
                      trace.partials[k]);
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "# summary method=%d n=%zu depth=%u final_bits=%.9g\n",
                  static_cast<int>(trace.method),
                  trace.skipped + trace.partials.size(), trace.depth, trace.final_bits);
    os << buf;
}

}  // namespace ctwdi
