#include "ctwdi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctwdi/oracle.hpp"

namespace ctwdi {

DelayScanResult delay_scan(const CausalPair& pair, std::uint32_t d_max, EstimatorMethod method,
                           std::uint32_t depth, double threshold) {
    if (static_cast<std::size_t>(d_max) + depth >= pair.size()) {
        throw std::invalid_argument("delay_scan: need d_max + depth < n");
    }
    DelayScanResult result;
    result.threshold = threshold;
    for (std::uint32_t d = 0; d <= d_max; ++d) {
        const double est = shifted_di(pair, d, method, depth);
        result.estimates.emplace_back(d, est);
        if (!result.detected && est > threshold) result.detected = d;
    }
    return result;
}

const char* to_string(CausalVerdict v) {
    switch (v) {
        case CausalVerdict::x_causes_y: return "X causes Y";
        case CausalVerdict::y_causes_x: return "Y causes X";
        case CausalVerdict::mutual: return "mutual";
        case CausalVerdict::independent: return "independent";
    }
    return "?";
}

CausalityReport classify_causality(double di, double reverse, CausalityThresholds thresholds) {
    CausalityReport r;
    r.di = di;
    r.reverse = reverse;
    r.mi = di + reverse;
    r.thresholds = thresholds;
    if (r.mi < thresholds.tau_abs) {
        r.verdict = CausalVerdict::independent;
    } else if (di > thresholds.rho_ratio * reverse) {
        r.verdict = CausalVerdict::x_causes_y;
    } else if (reverse > thresholds.rho_ratio * di) {
        r.verdict = CausalVerdict::y_causes_x;
    } else {
        r.verdict = CausalVerdict::mutual;
    }
    return r;
}

CausalityReport measure_causality(const CausalPair& pair, EstimatorMethod method,
                                  std::uint32_t depth, CausalityThresholds thresholds) {
    const double di = estimate_di(pair, method, depth).final_bits;
    const double rev = reverse_di(pair, method, depth).final_bits;
    return classify_causality(di, rev, thresholds);
}

double analytic_rate(const SourceConfig& config) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MarkovBscConfig>) {
                return markov_bsc_rate(v.p, v.eps);
            } else if constexpr (std::is_same_v<T, CoupledBscConfig>) {
                return coupled_bsc_rates(v.alpha, v.beta).di;
            } else if constexpr (std::is_same_v<T, IidPairConfig>) {
                return v.copy ? binary_entropy(v.q) : 0.0;
            } else {
                return std::numeric_limits<double>::quiet_NaN();
            }
        },
        config.variant);
}

namespace {

// markov-bsc convergence estimates the observation -> source direction
CausalPair orient(const SourceConfig& config, CausalPair pair) {
    if (std::holds_alternative<MarkovBscConfig>(config.variant)) {
        return CausalPair(std::move(pair.y), std::move(pair.x));
    }
    return pair;
}

}  // namespace

ConvergenceRun convergence_run(const SourceConfig& config,
                               std::span<const EstimatorMethod> methods,
                               std::span<const std::size_t> n_grid, std::uint32_t depth,
                               std::span<const std::uint64_t> seeds) {
    if (n_grid.empty()) throw std::invalid_argument("convergence_run: empty grid");
    if (!std::is_sorted(n_grid.begin(), n_grid.end())) {
        throw std::invalid_argument("convergence_run: grid must be ascending");
    }
    if (n_grid.front() <= depth) {
        throw std::invalid_argument("convergence_run: grid starts at or below depth");
    }
    const std::size_t n_max = n_grid.back();
    const double reference = analytic_rate(config);

    ConvergenceRun run;
    for (const std::uint64_t seed : seeds) {
        SourceConfig cfg = config;
        cfg.n = n_max;
        cfg.seed = seed;
        const CausalPair pair = orient(config, generate(cfg));
        for (const EstimatorMethod method : methods) {
            const EstimatorTrace trace = estimate_di(pair, method, depth);
            for (const std::size_t n : n_grid) {
                ConvergencePoint pt;
                pt.method = method;
                pt.seed = seed;
                pt.n = n;
                pt.estimate_bits = trace.partials[n - trace.skipped - 1];
                pt.analytic_bits = reference;
                run.points.push_back(pt);
            }
            TraceDiagnostic diag;
            diag.method = method;
            diag.seed = seed;
            double tv = 0.0;
            for (std::size_t k = 1; k < trace.partials.size(); ++k) {
                tv += std::abs(trace.partials[k] - trace.partials[k - 1]);
            }
            diag.total_variation = tv;
            run.diagnostics.push_back(diag);
        }
    }
    return run;
}

}  // namespace ctwdi
