// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ctwdi/analysis.hpp"
#include "ctwdi/ctw.hpp"
#include "ctwdi/estimators.hpp"
#include "ctwdi/oracle.hpp"
#include "ctwdi/sources.hpp"

using namespace ctwdi;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

const std::vector<EstimatorMethod> kAllMethods{
    EstimatorMethod::logloss, EstimatorMethod::entropy, EstimatorMethod::conditional_kl,
    EstimatorMethod::joint_kl};

// ---- criterion 1: Markov(0.3) through BSC(0.2), observation -> source ----
Check criterion_convergence() {
    Check c;
    const double truth = markov_bsc_rate(0.3, 0.2);
    for (const EstimatorMethod method : kAllMethods) {
        const auto start = std::chrono::steady_clock::now();
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SourceConfig cfg;
            cfg.variant = MarkovBscConfig{0.3, 0.2};
            cfg.n = 100000;
            cfg.seed = seed;
            const CausalPair data = generate(cfg);
            const CausalPair oriented(data.y, data.x);
            const double est = estimate_di(oriented, method, 3).final_bits;
            c.require(std::abs(est - truth) <= 0.05,
                      "method " + std::to_string(static_cast<int>(method)) + " seed " +
                          std::to_string(seed) + " est " + num(est) + " vs " + num(truth));
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(secs < 60.0, "method " + std::to_string(static_cast<int>(method)) +
                                   " took " + num(secs) + "s for 3 seeds");
    }
    return c;
}

// ---- criterion 2: coupled BSCs, both directions and their sum ----
Check criterion_coupled() {
    Check c;
    const CoupledBscRates truth = coupled_bsc_rates(0.1, 0.2);
    for (const EstimatorMethod method : {EstimatorMethod::entropy, EstimatorMethod::joint_kl}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const CausalPair pair = coupled_bsc_system(0.1, 0.2, 100000, seed);
            const double di = estimate_di(pair, method, 3).final_bits;
            const double rev = reverse_di(pair, method, 3).final_bits;
            const double mi = di + rev;
            const std::string tag =
                "method " + std::to_string(static_cast<int>(method)) + " seed " +
                std::to_string(seed);
            c.require(std::abs(di - truth.di) <= 0.05, tag + " di " + num(di));
            c.require(std::abs(rev - truth.reverse) <= 0.05, tag + " rev " + num(rev));
            c.require(std::abs(mi - truth.mi) <= 0.07, tag + " mi " + num(mi));
        }
    }
    return c;
}

// ---- criterion 3: delay detection on the two-tap channel ----
Check criterion_delay() {
    Check c;
    SourceConfig cfg;
    cfg.variant = IsiDelayConfig{0.3, 2, 0.1};
    cfg.n = 100000;
    cfg.seed = 1;
    const CausalPair pair = generate(cfg);
    const DelayScanResult scan = delay_scan(pair, 5, EstimatorMethod::entropy, 6, 0.02);
    for (const auto& [d, est] : scan.estimates) {
        if (d < 2) c.require(est < 0.01, "d=" + std::to_string(d) + " est " + num(est));
        else c.require(est > 0.1, "d=" + std::to_string(d) + " est " + num(est));
    }
    c.require(scan.detected.has_value() && *scan.detected == 2,
              std::string("detected ") +
                  (scan.detected ? std::to_string(*scan.detected) : "none"));
    return c;
}

// ---- criterion 4: exact-oracle identities ----
Check criterion_oracle() {
    Check c;
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        JointProcessModel m{Alphabet(2), Alphabet(2), 1, {}, {}};
        auto random_row = [&rng] {
            std::vector<double> row(4);
            double sum = 0.0;
            for (double& v : row) {
                v = static_cast<double>(rng() % 1000 + 1);
                sum += v;
            }
            for (double& v : row) v /= sum;
            return row;
        };
        for (int s = 0; s < 4; ++s) m.kernel.push_back(random_row());
        m.initial = random_row();
        const std::uint32_t n = 2 + rng() % 5;
        const ExactDi r = exact_di(m, n);
        c.require(std::abs(r.mi - (r.di + r.reverse)) <= 1e-9, "conservation violated");
        c.require(r.di >= -1e-12 && r.reverse >= -1e-12, "negative directed information");
        c.require(r.di <= r.hy_rate + 1e-12 && r.di <= 1.0 + 1e-12, "upper bound violated");
    }
    const ExactDi markov = exact_di(swap_roles(markov_bsc_model(0.3, 0.2)), 10);
    c.require(std::abs(markov.di - markov_bsc_rate(0.3, 0.2)) <= 0.02,
              "markov closed form vs enumeration: " + num(markov.di));
    const ExactDi coupled = exact_di(coupled_bsc_model(0.1, 0.2), 10);
    const CoupledBscRates truth = coupled_bsc_rates(0.1, 0.2);
    c.require(std::abs(coupled.di - truth.di) <= 0.02 &&
                  std::abs(coupled.reverse - truth.reverse) <= 0.02,
              "coupled closed form vs enumeration");
    return c;
}

// ---- criterion 5: CTW engine invariants ----
Check criterion_ctw() {
    Check c;
    std::mt19937_64 rng(99);

    // normalization and the 1/(2n+M) floor, fuzzed
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
        const std::uint32_t m = 2 + rng() % 3;
        const std::uint32_t depth = rng() % 4;
        ContextTree tree(Alphabet(m), depth);
        std::vector<Symbol> ctx(depth, 0);
        for (std::size_t n = 0; n < 250; ++n) {
            const Pmf p = tree.predict(ctx);
            double sum = 0.0;
            for (Symbol q = 0; q < m; ++q) sum += p[q];
            c.require(std::abs(sum - 1.0) <= 1e-9, "normalization drift");
            c.require(p.min_weight() >= 1.0 / (2.0 * n + m) - 1e-12, "conditional floor");
            const Symbol s = static_cast<Symbol>(rng() % m);
            tree.update(s, ctx);
            for (std::size_t k = ctx.size(); k-- > 1;) ctx[k] = ctx[k - 1];
            if (!ctx.empty()) ctx[0] = s;
        }
    }

    // weighted-probability identity over full trees, n <= 200
    std::function<void(const ContextTreeNode&, std::uint32_t, std::uint32_t)> walk =
        [&](const ContextTreeNode& node, std::uint32_t arity, std::uint32_t left) {
            if (left == 0) {
                c.require(std::abs(node.log_pw().bits - node.log_pe().bits) <= 1e-9,
                          "leaf identity");
                return;
            }
            double child_sum = 0.0;
            for (Symbol s = 0; s < arity; ++s) {
                if (const ContextTreeNode* ch = node.child(s)) child_sum += ch->log_pw().bits;
            }
            const double expect =
                log_add(LogProb{node.log_pe().bits}, LogProb{child_sum}).bits - 1.0;
            c.require(std::abs(node.log_pw().bits - expect) <=
                          1e-9 * std::max(1.0, std::abs(expect)),
                      "internal identity");
            for (Symbol s = 0; s < arity; ++s) {
                if (const ContextTreeNode* ch = node.child(s)) walk(*ch, arity, left - 1);
            }
        };
    for (int rep = 0; rep < 5; ++rep) {
        const std::uint32_t m = 2 + rng() % 2;
        ContextTree tree(Alphabet(m), 2);
        std::vector<Symbol> ctx(2, 0);
        for (int i = 0; i < 200; ++i) {
            const Symbol s = static_cast<Symbol>(rng() % m);
            tree.update(s, ctx);
            ctx[1] = ctx[0];
            ctx[0] = s;
            walk(tree.root(), m, 2);
        }
    }

    // telescoping at n = 1e4
    {
        ContextTree tree(Alphabet(2), 3);
        std::vector<Symbol> ctx(3, 0);
        double acc = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Symbol s = static_cast<Symbol>(rng() % 2);
            acc += std::log2(tree.predict(ctx)[s]);
            tree.update(s, ctx);
            ctx[2] = ctx[1];
            ctx[1] = ctx[0];
            ctx[0] = s;
        }
        c.require(std::abs(acc - tree.assignment_log_prob().bits) <= 1e-6,
                  "telescoping drift " + num(acc - tree.assignment_log_prob().bits));
    }

    // the depth-3 walkthrough count table
    {
        const std::vector<Symbol> full{0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0};
        ContextTree tree(Alphabet(2), 3);
        for (std::size_t i = 3; i < full.size(); ++i) {
            const std::vector<Symbol> ctx{full[i - 1], full[i - 2], full[i - 3]};
            tree.update(full[i], ctx);
        }
        const ContextTreeNode* one = tree.root().child(1);
        c.require(one && one->counts()[0] == 3 && one->counts()[1] == 1,
                  "walkthrough counts at context 1");
    }
    return c;
}

// ---- criterion 6: redundancy inequalities ----
Check criterion_redundancy() {
    Check c;
    // exhaustive binary KT bound, n <= 12, C = 1
    for (int n = 1; n <= 12 && c.ok; ++n) {
        const double budget = 0.5 * std::log2(static_cast<double>(n)) + 1.0;
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            std::vector<std::uint64_t> counts(2, 0);
            double log_p = 0.0;
            int ones = 0;
            for (int i = 0; i < n; ++i) {
                const Symbol s = (bits >> i) & 1u;
                log_p += std::log2(kt_sequential(counts, s));
                counts[s] += 1;
                ones += s;
            }
            double emp = 0.0;
            for (const int k : {ones, n - ones}) {
                if (k > 0) emp += k * std::log2(static_cast<double>(k) / n);
            }
            if (-log_p + emp > budget + 1e-9) {
                c.require(false, "KT bound broken at n=" + std::to_string(n));
                break;
            }
        }
    }

    // CTW pointwise redundancy on 100 depth-1 Markov samples at n = 1e4
    const std::size_t n = 10000;
    const double budget = ctw_redundancy_bound(2, 2, n);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const SymbolSequence x = gen_markov_binary(0.3, n, seed);
        ContextTree tree(Alphabet(2), 1);
        std::vector<Symbol> ctx{x[0]};
        double log_p_true = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            tree.update(x[i], ctx);
            log_p_true += std::log2(x[i] == x[i - 1] ? 0.7 : 0.3);
            ctx[0] = x[i];
        }
        const double red = -tree.assignment_log_prob().bits + log_p_true;
        c.require(red <= budget, "seed " + std::to_string(seed) + " redundancy " + num(red) +
                                     " over budget " + num(budget));
    }
    return c;
}

// ---- criterion 7: estimator support properties ----
Check criterion_support() {
    Check c;
    std::mt19937_64 rng(4242);
    auto adversarial = [&rng](std::uint32_t m, std::size_t n) {
        std::vector<Symbol> s(n);
        std::size_t i = 0;
        while (i < n) {
            const std::size_t block = 1 + rng() % 16;
            const int mode = static_cast<int>(rng() % 3);
            const Symbol fixed = static_cast<Symbol>(rng() % m);
            for (std::size_t k = 0; k < block && i < n; ++k, ++i) {
                s[i] = mode == 0 ? fixed
                       : mode == 1 ? static_cast<Symbol>(i % m)
                                   : static_cast<Symbol>(rng() % m);
            }
        }
        return SymbolSequence(Alphabet(m), std::move(s));
    };

    int inputs = 0;
    while (inputs < 10000 && c.ok) {
        const std::uint32_t mx = 2 + rng() % 2, my = 2 + rng() % 2;
        const std::uint32_t depth = 1 + rng() % 2;
        const std::size_t n = depth + 2 + rng() % 30;
        const CausalPair pair(adversarial(mx, n), adversarial(my, n));
        const double ylog = std::log2(static_cast<double>(my));
        for (double v : estimate_di(pair, EstimatorMethod::entropy, depth).partials) {
            if (v < -ylog - 1e-12 || v > ylog + 1e-12) {
                c.require(false, "entropy estimate out of range: " + num(v));
                break;
            }
        }
        for (double v : estimate_di(pair, EstimatorMethod::conditional_kl, depth).partials) {
            if (v < 0.0) {
                c.require(false, "conditional_kl went negative: " + num(v));
                break;
            }
        }
        for (double v : estimate_di(pair, EstimatorMethod::joint_kl, depth).partials) {
            if (v < 0.0) {
                c.require(false, "joint_kl went negative: " + num(v));
                break;
            }
        }
        if (inputs % 50 == 0) {
            const double direct = estimate_di(pair, EstimatorMethod::joint_kl, depth).final_bits;
            const double split = joint_kl_cross_entropy_form(pair, depth);
            c.require(std::abs(direct - split) <= 1e-9,
                      "joint_kl routes disagree by " + num(direct - split));
        }
        ++inputs;
    }
    return c;
}

// ---- criterion 8: independence null ----
Check criterion_null() {
    Check c;
    const CausalPair pair = iid_pair(0.5, false, 100000, 7);
    for (const EstimatorMethod method : kAllMethods) {
        const double est = estimate_di(pair, method, 3).final_bits;
        c.require(std::abs(est) <= 0.02, "method " + std::to_string(static_cast<int>(method)) +
                                             " est " + num(est));
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 convergence to the analytic rate (markov 0.3 through bsc 0.2, all methods)",
         criterion_convergence},
        {"2 coupled-system rates (di/reverse/mi, entropy and joint_kl)", criterion_coupled},
        {"3 delay detection on the two-tap channel (delay 2, depth 6)", criterion_delay},
        {"4 exact-oracle identities and closed-form agreement", criterion_oracle},
        {"5 context-tree engine invariants", criterion_ctw},
        {"6 redundancy inequalities (KT exhaustive, CTW sampled)", criterion_redundancy},
        {"7 estimator support properties on adversarial inputs", criterion_support},
        {"8 independence null within 0.02 bits for all methods", criterion_null},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const Check c = fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", name.c_str(),
                    secs, c.detail.empty() ? "" : " — ", c.detail.c_str());
        failures += c.ok ? 0 : 1;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
