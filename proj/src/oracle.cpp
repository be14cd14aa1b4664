#include "ctwdi/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctwdi {

namespace {
constexpr double kRowTolerance = 1e-12;
}

double binary_entropy(double p) {
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double markov_bsc_rate(double p, double eps) {
    if (!(p > 0.0 && p < 1.0) || !(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("markov_bsc_rate: p and eps must lie in (0, 1)");
    }
    const double pb = 1.0 - p;
    const double eb = 1.0 - eps;
    const double a = p * eps + pb * eb;   // P(Y_i = X_{i-1})
    const double b = pb * eps + p * eb;   // P(Y_i != X_{i-1})
    return binary_entropy(p) - a * binary_entropy(p * eps / a) - b * binary_entropy(pb * eps / b);
}

CoupledBscRates coupled_bsc_rates(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= 0.5) || !(beta >= 0.0 && beta <= 0.5)) {
        throw std::invalid_argument("coupled_bsc_rates: parameters must lie in [0, 1/2]");
    }
    const double mix = alpha * (1.0 - beta) + (1.0 - alpha) * beta;
    CoupledBscRates r;
    r.di = binary_entropy(mix) - binary_entropy(alpha);
    r.reverse = binary_entropy(mix) - binary_entropy(beta);
    r.mi = r.di + r.reverse;
    return r;
}

void JointProcessModel::validate() const {
    const std::uint32_t k = super_size();
    std::uint64_t states = 1;
    for (std::uint32_t j = 0; j < memory; ++j) states *= k;
    if (kernel.size() != states) throw std::invalid_argument("model: kernel has wrong state count");
    for (const auto& row : kernel) {
        if (row.size() != k) throw std::invalid_argument("model: kernel row has wrong arity");
        double sum = 0.0;
        for (double v : row) {
            if (!(v >= 0.0)) throw std::invalid_argument("model: negative kernel entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowTolerance) {
            throw std::invalid_argument("model: kernel row sums to " + std::to_string(sum));
        }
    }
    if (initial.size() != states) throw std::invalid_argument("model: initial has wrong size");
    double sum = 0.0;
    for (double v : initial) {
        if (!(v >= 0.0)) throw std::invalid_argument("model: negative initial entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
        throw std::invalid_argument("model: initial sums to " + std::to_string(sum));
    }
}

JointProcessModel swap_roles(const JointProcessModel& m) {
    m.validate();
    const std::uint32_t mx = m.x_alphabet.size();
    const std::uint32_t my = m.y_alphabet.size();
    const std::uint32_t k = m.super_size();
    auto remap = [&](std::uint32_t z) { return (z % my) * mx + z / my; };
    auto remap_state = [&](std::uint64_t state) {
        // remap each of the memory symbols in the packed state
        std::vector<std::uint32_t> digits(m.memory);
        for (std::uint32_t j = m.memory; j-- > 0;) {
            digits[j] = static_cast<std::uint32_t>(state % k);
            state /= k;
        }
        std::uint64_t out = 0;
        for (std::uint32_t j = 0; j < m.memory; ++j) out = out * k + remap(digits[j]);
        return out;
    };

    JointProcessModel s{m.y_alphabet, m.x_alphabet, m.memory, {}, {}};
    s.kernel.assign(m.kernel.size(), std::vector<double>(k, 0.0));
    s.initial.assign(m.initial.size(), 0.0);
    for (std::uint64_t state = 0; state < m.kernel.size(); ++state) {
        for (std::uint32_t z = 0; z < k; ++z) {
            s.kernel[remap_state(state)][remap(z)] = m.kernel[state][z];
        }
    }
    for (std::uint64_t state = 0; state < m.initial.size(); ++state) {
        s.initial[remap_state(state)] = m.initial[state];
    }
    return s;
}

std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& transition) {
    const std::size_t n = transition.size();
    std::vector<double> v(n, 1.0 / static_cast<double>(n)), next(n);
    for (int iter = 0; iter < 100000; ++iter) {
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += v[i] * transition[i][j];
            next[j] = s;
        }
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - v[j]);
        v.swap(next);
        if (delta < 1e-14) break;
    }
    return v;
}

JointProcessModel markov_bsc_model(double p, double eps) {
    const Alphabet bin(2);
    JointProcessModel m{bin, bin, 1, {}, {}};
    const std::vector<std::vector<double>> chain{{1.0 - p, p}, {p, 1.0 - p}};
    const std::vector<double> pi = stationary_distribution(chain);
    auto channel = [eps](std::uint32_t x, std::uint32_t y) { return y == x ? 1.0 - eps : eps; };

    m.kernel.assign(4, std::vector<double>(4, 0.0));
    for (std::uint32_t xp = 0; xp < 2; ++xp) {
        for (std::uint32_t yp = 0; yp < 2; ++yp) {
            for (std::uint32_t x = 0; x < 2; ++x) {
                for (std::uint32_t y = 0; y < 2; ++y) {
                    m.kernel[xp * 2 + yp][x * 2 + y] = chain[xp][x] * channel(x, y);
                }
            }
        }
    }
    m.initial.assign(4, 0.0);
    for (std::uint32_t x = 0; x < 2; ++x) {
        for (std::uint32_t y = 0; y < 2; ++y) m.initial[x * 2 + y] = pi[x] * channel(x, y);
    }
    return m;
}

JointProcessModel coupled_bsc_model(double alpha, double beta) {
    const Alphabet bin(2);
    JointProcessModel m{bin, bin, 1, {}, {}};
    auto bsc = [](double e, std::uint32_t in, std::uint32_t out) {
        return out == in ? 1.0 - e : e;
    };
    m.kernel.assign(4, std::vector<double>(4, 0.0));
    for (std::uint32_t xp = 0; xp < 2; ++xp) {
        for (std::uint32_t yp = 0; yp < 2; ++yp) {
            for (std::uint32_t x = 0; x < 2; ++x) {
                for (std::uint32_t y = 0; y < 2; ++y) {
                    m.kernel[xp * 2 + yp][x * 2 + y] = bsc(beta, yp, x) * bsc(alpha, x, y);
                }
            }
        }
    }
    // X_1 ~ Bernoulli(1/2), Y_1 its BSC(alpha) image
    m.initial.assign(4, 0.0);
    for (std::uint32_t x = 0; x < 2; ++x) {
        for (std::uint32_t y = 0; y < 2; ++y) m.initial[x * 2 + y] = 0.5 * bsc(alpha, x, y);
    }
    return m;
}

JointProcessModel iid_pair_model(double q, bool copy) {
    const Alphabet bin(2);
    JointProcessModel m{bin, bin, 1, {}, {}};
    auto bern = [q](std::uint32_t v) { return v == 1 ? q : 1.0 - q; };
    std::vector<double> row(4, 0.0);
    for (std::uint32_t x = 0; x < 2; ++x) {
        for (std::uint32_t y = 0; y < 2; ++y) {
            row[x * 2 + y] = copy ? (x == y ? bern(x) : 0.0) : bern(x) * bern(y);
        }
    }
    m.kernel.assign(4, row);
    m.initial = row;
    return m;
}

namespace {

struct ExactSums {
    std::vector<double> a;  // a[i] = H(X^i, Y^i)
    std::vector<double> b;  // b[i] = H(X^i, Y^{i-1})
    std::vector<double> c;  // c[i] = H(X^{i-1}, Y^i)
    std::vector<double> xmarg, ymarg;
};

struct ExactWalk {
    const JointProcessModel& m;
    std::uint32_t n;
    std::uint32_t mx, my, k;
    std::uint64_t state_mod;                       // k^memory
    std::vector<std::vector<double>> init_marg;    // init_marg[j] over k^j
    ExactSums sums;

    std::span<const double> step_row(std::uint32_t i, std::uint64_t state,
                                     std::vector<double>& scratch) const {
        if (i <= m.memory) {
            const auto& cur = init_marg[i];
            const auto& prev = init_marg[i - 1];
            const double base = prev[state];
            for (std::uint32_t z = 0; z < k; ++z) {
                scratch[z] = base > 0.0 ? cur[state * k + z] / base : 0.0;
            }
            return scratch;
        }
        return m.kernel[state];
    }

    // i: 1-based index of the symbol being placed; state: packed z^{i-1}
    // (all of it while i-1 < memory, else the last memory symbols)
    void visit(std::uint32_t i, double log_p, std::uint64_t state, std::uint64_t xpack,
               std::uint64_t ypack) {
        std::vector<double> scratch(k);
        const auto row = step_row(i, state, scratch);
        const double p = std::exp2(log_p);

        for (std::uint32_t x = 0; x < mx; ++x) {
            double s = 0.0;
            for (std::uint32_t y = 0; y < my; ++y) s += row[x * my + y];
            if (s > 0.0) {
                const double q = p * s;
                sums.b[i] -= q * (log_p + std::log2(s));
            }
        }
        for (std::uint32_t y = 0; y < my; ++y) {
            double s = 0.0;
            for (std::uint32_t x = 0; x < mx; ++x) s += row[x * my + y];
            if (s > 0.0) {
                const double q = p * s;
                sums.c[i] -= q * (log_p + std::log2(s));
            }
        }
        for (std::uint32_t z = 0; z < k; ++z) {
            if (row[z] <= 0.0) continue;
            const double child_log_p = log_p + std::log2(row[z]);
            const double q = std::exp2(child_log_p);
            sums.a[i] -= q * child_log_p;
            const std::uint64_t xp = xpack * mx + z / my;
            const std::uint64_t yp = ypack * my + z % my;
            if (i == n) {
                sums.xmarg[xp] += q;
                sums.ymarg[yp] += q;
            } else {
                const std::uint64_t next_state =
                    i < m.memory ? state * k + z : (state * k + z) % state_mod;
                visit(i + 1, child_log_p, next_state, xp, yp);
            }
        }
    }
};

double entropy_of(const std::vector<double>& dist) {
    double h = 0.0;
    for (double v : dist) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

}  // namespace

ExactDi exact_di(const JointProcessModel& model, std::uint32_t n) {
    model.validate();
    if (n < 1) throw std::invalid_argument("exact_di: n must be at least 1");
    if (n < model.memory) throw std::invalid_argument("exact_di: n shorter than model memory");
    const std::uint32_t k = model.super_size();
    if (static_cast<double>(n) * std::log2(static_cast<double>(k)) > 24.0 + 1e-9) {
        throw std::invalid_argument("exact_di: enumeration bound (|X||Y|)^n <= 2^24 exceeded");
    }

    ExactWalk walk{model, n, model.x_alphabet.size(), model.y_alphabet.size(), k, 1, {}, {}};
    for (std::uint32_t j = 0; j < model.memory; ++j) walk.state_mod *= k;

    walk.init_marg.resize(model.memory + 1);
    walk.init_marg[model.memory] = model.initial;
    for (std::uint32_t j = model.memory; j-- > 0;) {
        walk.init_marg[j].assign(walk.init_marg[j + 1].size() / k, 0.0);
        for (std::size_t q = 0; q < walk.init_marg[j].size(); ++q) {
            for (std::uint32_t z = 0; z < k; ++z) {
                walk.init_marg[j][q] += walk.init_marg[j + 1][q * k + z];
            }
        }
    }

    std::uint64_t xm_size = 1, ym_size = 1;
    for (std::uint32_t j = 0; j < n; ++j) {
        xm_size *= walk.mx;
        ym_size *= walk.my;
    }
    walk.sums.a.assign(n + 1, 0.0);
    walk.sums.b.assign(n + 1, 0.0);
    walk.sums.c.assign(n + 1, 0.0);
    walk.sums.xmarg.assign(xm_size, 0.0);
    walk.sums.ymarg.assign(ym_size, 0.0);

    walk.visit(1, 0.0, 0, 0, 0);

    const double hx = entropy_of(walk.sums.xmarg);
    const double hy = entropy_of(walk.sums.ymarg);
    const auto& a = walk.sums.a;
    const auto& b = walk.sums.b;
    const auto& c = walk.sums.c;

    double h_y_causal_x = 0.0;   // sum_i H(Y_i | X^i, Y^{i-1})
    double h_x_given_past = 0.0; // sum_i H(X_i | X^{i-1}, Y^{i-1})
    double h_y_given_past = 0.0; // sum_i H(Y_i | X^{i-1}, Y^{i-1})
    double inst = 0.0;
    for (std::uint32_t i = 1; i <= n; ++i) {
        h_y_causal_x += a[i] - b[i];
        h_x_given_past += b[i] - a[i - 1];
        h_y_given_past += c[i] - a[i - 1];
        inst += b[i] + c[i] - a[i - 1] - a[i];
    }

    ExactDi r;
    const double dn = static_cast<double>(n);
    r.di = (hy - h_y_causal_x) / dn;
    r.reverse = (hx - h_x_given_past) / dn;
    r.mi = (hx + hy - a[n]) / dn;
    r.di_delayed = (hy - h_y_given_past) / dn;
    r.instantaneous = inst / dn;
    r.hx_rate = hx / dn;
    r.hy_rate = hy / dn;
    return r;
}

double ctw_redundancy_bound(std::uint32_t gamma, std::uint32_t states, std::uint64_t n) {
    if (gamma < 2 || states < 1 || n < 2) {
        throw std::invalid_argument("ctw_redundancy_bound: need gamma >= 2, states >= 1, n >= 2");
    }
    const double g = static_cast<double>(gamma);
    const double s = static_cast<double>(states);
    const double c5 = (g - 1.0) * s / 2.0;
    const double c6 = c5 * std::log2(1.0 / s) + s * (g / (g - 1.0) + std::log2(g)) - 1.0 / (g - 1.0);
    return c5 * std::log2(static_cast<double>(n)) + c6;
}

}  // namespace ctwdi
