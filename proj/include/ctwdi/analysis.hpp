#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctwdi/estimators.hpp"
#include "ctwdi/sources.hpp"

namespace ctwdi {

/// Shifted-DI estimates for every candidate delay d = 0..d_max, plus the
/// smallest d whose estimate clears the detection threshold (if any).
struct DelayScanResult {
    std::vector<std::pair<std::uint32_t, double>> estimates;
    std::optional<std::uint32_t> detected;
    double threshold = 0.0;
};

DelayScanResult delay_scan(const CausalPair& pair, std::uint32_t d_max, EstimatorMethod method,
                           std::uint32_t depth, double threshold);

enum class CausalVerdict {
    x_causes_y,
    y_causes_x,
    mutual,
    independent,
};

const char* to_string(CausalVerdict v);

/// Decision thresholds; the defaults are this tool's choices, reported with
/// every classification so they stay visible.
struct CausalityThresholds {
    double tau_abs = 0.02;   // below this mutual-information estimate: independent
    double rho_ratio = 2.0;  // dominance ratio required to call one direction
};

struct CausalityReport {
    double di = 0.0;
    double reverse = 0.0;
    double mi = 0.0;  // always di + reverse
    CausalVerdict verdict = CausalVerdict::independent;
    CausalityThresholds thresholds;
};

/// Classify from already-computed estimates: independent when mi < tau,
/// otherwise a direction wins when it exceeds rho times the other, else
/// mutual.
CausalityReport classify_causality(double di, double reverse, CausalityThresholds thresholds);

/// Run the forward and reverse estimators on the pair, then classify.
CausalityReport measure_causality(const CausalPair& pair, EstimatorMethod method,
                                  std::uint32_t depth, CausalityThresholds thresholds);

struct ConvergencePoint {
    EstimatorMethod method{};
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double estimate_bits = 0.0;
    double analytic_bits = 0.0;  // NaN when no closed form exists
};

struct TraceDiagnostic {
    EstimatorMethod method{};
    std::uint64_t seed = 0;
    double total_variation = 0.0;  // sum of |successive partial differences|
};

struct ConvergenceRun {
    std::vector<ConvergencePoint> points;
    std::vector<TraceDiagnostic> diagnostics;
};

/// One estimation run per (method, seed) at the largest grid length; the
/// estimate at each smaller n is read off the same trace, which is exactly
/// the estimate a prefix-only run would produce. The estimated direction is
/// the variant's natural one (markov-bsc: observation -> source; otherwise
/// cause -> effect), paired with its closed-form rate where one exists.
ConvergenceRun convergence_run(const SourceConfig& config,
                               std::span<const EstimatorMethod> methods,
                               std::span<const std::size_t> n_grid, std::uint32_t depth,
                               std::span<const std::uint64_t> seeds);

/// The closed-form rate shown next to the estimates (NaN if none).
double analytic_rate(const SourceConfig& config);

}  // namespace ctwdi
