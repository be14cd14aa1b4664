// Command-line front end: every subcommand echoes its full parameter set as
// leading '#' comment lines, and all randomness flows from --seed, so a rerun
// of the same invocation reproduces its output byte for byte.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctwdi/analysis.hpp"
#include "ctwdi/core.hpp"
#include "ctwdi/estimators.hpp"
#include "ctwdi/ingest.hpp"
#include "ctwdi/oracle.hpp"
#include "ctwdi/sources.hpp"

namespace {

using namespace ctwdi;

std::string fmt(double v, int prec = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string fmtg(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            m_file.open(path);
            if (!m_file) throw std::runtime_error("cannot open output file " + path);
            m_os = &m_file;
        }
    }
    std::ostream& os() { return *m_os; }

  private:
    std::ofstream m_file;
    std::ostream* m_os = &std::cout;
};

// ordered key=value echo of the run parameters
class RunSpec {
  public:
    explicit RunSpec(std::string subcommand) : m_subcommand(std::move(subcommand)) {}
    RunSpec& add(const std::string& key, const std::string& value) {
        m_kv.emplace_back(key, value);
        return *this;
    }
    RunSpec& add(const std::string& key, double value) { return add(key, fmtg(value)); }
    RunSpec& add(const std::string& key, std::uint64_t value) {
        return add(key, std::to_string(value));
    }
    void print(std::ostream& os) const {
        os << "# ctwdi " << m_subcommand;
        for (const auto& [k, v] : m_kv) os << ' ' << k << '=' << v;
        os << '\n';
    }

  private:
    std::string m_subcommand;
    std::vector<std::pair<std::string, std::string>> m_kv;
};

CausalPair offset_pair(CausalPair pair, long long offset) {
    if (offset == 0) return pair;
    const std::size_t n = pair.size();
    const std::size_t shift = static_cast<std::size_t>(offset > 0 ? offset : -offset);
    if (shift >= n) throw std::invalid_argument("offset leaves no overlap");
    const std::size_t m = n - shift;
    std::vector<Symbol> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (offset > 0) {
            xs[i] = pair.x[i];
            ys[i] = pair.y[i + shift];
        } else {
            xs[i] = pair.x[i + shift];
            ys[i] = pair.y[i];
        }
    }
    return CausalPair(SymbolSequence(pair.x.alphabet(), std::move(xs)),
                      SymbolSequence(pair.y.alphabet(), std::move(ys)));
}

std::vector<std::size_t> default_grid(std::size_t n, std::uint32_t depth) {
    std::vector<std::size_t> grid;
    const std::size_t lo = std::max<std::size_t>(100, depth + 2);
    const int points = 12;
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        const auto g = static_cast<std::size_t>(
            std::llround(lo * std::pow(static_cast<double>(n) / lo, f)));
        if (grid.empty() || g > grid.back()) grid.push_back(g);
    }
    if (grid.back() != n) grid.push_back(n);
    return grid;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoull(item));
    }
    return out;
}

std::vector<EstimatorMethod> parse_methods(const std::string& csv) {
    std::vector<EstimatorMethod> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(method_from_int(std::stoi(item)));
    }
    if (out.empty()) throw std::invalid_argument("no estimator methods given");
    return out;
}

struct EstimateArgs {
    std::string x_path, y_path, format = "symbols", out, trace_path;
    int method = 2;
    std::uint32_t depth = 3;
    std::uint32_t alphabet = 0;
    double threshold = 0.008;
    bool log_returns = false;
    long long y_offset = 0;
};

void run_estimate(const EstimateArgs& a) {
    std::optional<CausalPair> pair;
    std::size_t dropped_a = 0, dropped_b = 0;
    if (a.format == "dated") {
        const DatedSeries sa = load_csv_series(a.x_path);
        const DatedSeries sb = load_csv_series(a.y_path);
        AlignedPair aligned = align_series(sa, sb, a.threshold,
                                           a.log_returns ? ReturnKind::log : ReturnKind::simple);
        dropped_a = aligned.dropped_a;
        dropped_b = aligned.dropped_b;
        pair.emplace(std::move(aligned.x), std::move(aligned.y));
    } else if (a.format == "symbols") {
        std::optional<std::uint32_t> m;
        if (a.alphabet >= 2) m = a.alphabet;
        pair.emplace(read_symbols(a.x_path, m), read_symbols(a.y_path, m));
    } else {
        throw std::invalid_argument("format must be 'symbols' or 'dated'");
    }
    const CausalPair data = offset_pair(std::move(*pair), a.y_offset);
    const EstimatorMethod method = method_from_int(a.method);

    Output out(a.out);
    RunSpec spec("estimate");
    spec.add("x", a.x_path)
        .add("y", a.y_path)
        .add("format", a.format)
        .add("method", std::uint64_t(a.method))
        .add("depth", std::uint64_t(a.depth))
        .add("y_offset", std::to_string(a.y_offset));
    if (a.format == "dated") {
        spec.add("threshold", a.threshold).add("log_returns", a.log_returns ? "1" : "0");
    }
    spec.print(out.os());
    if (a.format == "dated") {
        out.os() << "# aligned n=" << data.size() << " dropped_x=" << dropped_a
                 << " dropped_y=" << dropped_b << '\n';
    }

    const EstimatorTrace fwd = estimate_di(data, method, a.depth);
    const EstimatorTrace rev = reverse_di(data, method, a.depth);
    out.os() << "measure,method,n,depth,bits\n";
    out.os() << "di," << a.method << ',' << data.size() << ',' << a.depth << ','
             << fmt(fwd.final_bits) << '\n';
    out.os() << "reverse," << a.method << ',' << data.size() << ',' << a.depth << ','
             << fmt(rev.final_bits) << '\n';
    out.os() << "mi," << a.method << ',' << data.size() << ',' << a.depth << ','
             << fmt(fwd.final_bits + rev.final_bits) << '\n';

    if (!a.trace_path.empty()) {
        std::ofstream tf(a.trace_path);
        if (!tf) throw std::runtime_error("cannot open trace file " + a.trace_path);
        write_trace_csv(tf, fwd);
    }
}

struct SimulateArgs {
    std::string variant;
    double p = 0.3, eps = 0.2, alpha = 0.1, beta = 0.2, q = 0.5;
    bool copy = false;
    std::uint32_t delay = 2;
    std::uint64_t n = 10000, seed = 1;
    std::string out, out_x, out_y;
};

SourceConfig config_from(const std::string& variant, const SimulateArgs& a) {
    SourceConfig cfg;
    cfg.n = a.n;
    cfg.seed = a.seed;
    if (variant == "markov-bsc") cfg.variant = MarkovBscConfig{a.p, a.eps};
    else if (variant == "isi") cfg.variant = IsiDelayConfig{a.p, a.delay, a.eps};
    else if (variant == "coupled-bsc") cfg.variant = CoupledBscConfig{a.alpha, a.beta};
    else if (variant == "iid-pair") cfg.variant = IidPairConfig{a.q, a.copy};
    else throw std::invalid_argument("unknown source variant '" + variant + "'");
    return cfg;
}

RunSpec spec_from(const char* sub, const std::string& variant, const SimulateArgs& a) {
    RunSpec spec(sub);
    spec.add("variant", variant);
    if (variant == "markov-bsc") spec.add("p", a.p).add("eps", a.eps);
    if (variant == "isi") spec.add("p", a.p).add("delay", std::uint64_t(a.delay)).add("eps", a.eps);
    if (variant == "coupled-bsc") spec.add("alpha", a.alpha).add("beta", a.beta);
    if (variant == "iid-pair") spec.add("q", a.q).add("copy", a.copy ? "1" : "0");
    spec.add("n", a.n).add("seed", a.seed);
    return spec;
}

void run_simulate(const SimulateArgs& a) {
    const SourceConfig cfg = config_from(a.variant, a);
    const CausalPair pair = generate(cfg);
    const RunSpec spec = spec_from("simulate", a.variant, a);

    if (!a.out_x.empty() || !a.out_y.empty()) {
        if (a.out_x.empty() || a.out_y.empty()) {
            throw std::invalid_argument("--out-x and --out-y must be given together");
        }
        for (const auto& [path, seq] :
             {std::pair{a.out_x, &pair.x}, std::pair{a.out_y, &pair.y}}) {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open " + path);
            spec.print(f);
            write_symbols(f, *seq);
        }
        return;
    }
    Output out(a.out);
    spec.print(out.os());
    out.os() << "x,y\n";
    for (std::size_t i = 0; i < pair.size(); ++i) {
        out.os() << pair.x[i] << ',' << pair.y[i] << '\n';
    }
}

struct DelayScanArgs {
    std::string source;  // "isi" or empty for --x/--y
    std::string x_path, y_path, out;
    double p = 0.3, eps = 0.1, threshold = 0.02;
    std::uint32_t delay = 2, dmax = 5, depth = 6;
    int method = 2;
    std::uint64_t n = 100000, seed = 1;
    std::uint32_t alphabet = 0;
};

void run_delay_scan(const DelayScanArgs& a) {
    std::optional<CausalPair> pair;
    RunSpec spec("delay-scan");
    if (a.source == "isi") {
        SourceConfig cfg;
        cfg.variant = IsiDelayConfig{a.p, a.delay, a.eps};
        cfg.n = a.n;
        cfg.seed = a.seed;
        pair = generate(cfg);
        spec.add("source", "isi")
            .add("p", a.p)
            .add("delay", std::uint64_t(a.delay))
            .add("eps", a.eps)
            .add("n", a.n)
            .add("seed", a.seed);
    } else if (a.source.empty()) {
        if (a.x_path.empty() || a.y_path.empty()) {
            throw std::invalid_argument("delay-scan needs either the 'isi' source or --x and --y");
        }
        std::optional<std::uint32_t> m;
        if (a.alphabet >= 2) m = a.alphabet;
        pair.emplace(read_symbols(a.x_path, m), read_symbols(a.y_path, m));
        spec.add("x", a.x_path).add("y", a.y_path);
    } else {
        throw std::invalid_argument("unknown delay-scan source '" + a.source + "'");
    }
    spec.add("dmax", std::uint64_t(a.dmax))
        .add("method", std::uint64_t(a.method))
        .add("depth", std::uint64_t(a.depth))
        .add("threshold", a.threshold);

    const DelayScanResult result =
        delay_scan(*pair, a.dmax, method_from_int(a.method), a.depth, a.threshold);

    Output out(a.out);
    spec.print(out.os());
    out.os() << "d,estimate_bits\n";
    for (const auto& [d, est] : result.estimates) {
        out.os() << d << ',' << fmt(est) << '\n';
    }
    out.os() << "detected," << (result.detected ? std::to_string(*result.detected) : "none")
             << '\n';
}

struct CausalityArgs {
    std::string source;  // "coupled-bsc" or empty
    std::string x_path, y_path, out;
    double alpha = 0.1, beta = 0.2, tau = 0.02, rho = 2.0;
    int method = 2;
    std::uint32_t depth = 3;
    std::uint64_t n = 100000, seed = 1;
    std::uint32_t alphabet = 0;
};

void run_causality(const CausalityArgs& a) {
    std::optional<CausalPair> pair;
    RunSpec spec("causality");
    if (a.source == "coupled-bsc") {
        pair = coupled_bsc_system(a.alpha, a.beta, a.n, a.seed);
        spec.add("source", "coupled-bsc")
            .add("alpha", a.alpha)
            .add("beta", a.beta)
            .add("n", a.n)
            .add("seed", a.seed);
    } else if (a.source.empty()) {
        if (a.x_path.empty() || a.y_path.empty()) {
            throw std::invalid_argument(
                "causality needs either the 'coupled-bsc' source or --x and --y");
        }
        std::optional<std::uint32_t> m;
        if (a.alphabet >= 2) m = a.alphabet;
        pair.emplace(read_symbols(a.x_path, m), read_symbols(a.y_path, m));
        spec.add("x", a.x_path).add("y", a.y_path);
    } else {
        throw std::invalid_argument("unknown causality source '" + a.source + "'");
    }
    spec.add("method", std::uint64_t(a.method))
        .add("depth", std::uint64_t(a.depth))
        .add("tau", a.tau)
        .add("rho", a.rho);

    const CausalityReport report =
        measure_causality(*pair, method_from_int(a.method), a.depth, {a.tau, a.rho});

    Output out(a.out);
    spec.print(out.os());
    out.os() << "di_bits,reverse_bits,mi_bits,verdict\n";
    out.os() << fmt(report.di) << ',' << fmt(report.reverse) << ',' << fmt(report.mi) << ','
             << to_string(report.verdict) << '\n';
}

struct ConvergenceArgs {
    SimulateArgs sim;
    std::uint32_t depth = 3;
    std::uint64_t seeds = 3, seed_base = 1;
    std::string methods = "1,2,3,4";
    std::string grid;
};

void run_convergence(const ConvergenceArgs& a) {
    const SourceConfig cfg = config_from(a.sim.variant, a.sim);
    const std::vector<EstimatorMethod> methods = parse_methods(a.methods);
    const std::vector<std::size_t> grid =
        a.grid.empty() ? default_grid(a.sim.n, a.depth) : parse_size_list(a.grid);
    std::vector<std::uint64_t> seeds(a.seeds);
    for (std::uint64_t s = 0; s < a.seeds; ++s) seeds[s] = a.seed_base + s;

    const ConvergenceRun run = convergence_run(cfg, methods, grid, a.depth, seeds);

    Output out(a.sim.out);
    RunSpec spec = spec_from("convergence", a.sim.variant, a.sim);
    spec.add("depth", std::uint64_t(a.depth))
        .add("seeds", a.seeds)
        .add("seed_base", a.seed_base)
        .add("methods", a.methods);
    spec.print(out.os());
    out.os() << "method,seed,n,estimate_bits,analytic_bits\n";
    for (const ConvergencePoint& pt : run.points) {
        out.os() << static_cast<int>(pt.method) << ',' << pt.seed << ',' << pt.n << ','
                 << fmt(pt.estimate_bits) << ',';
        if (std::isnan(pt.analytic_bits)) out.os() << '\n';
        else out.os() << fmt(pt.analytic_bits) << '\n';
    }
    for (const TraceDiagnostic& d : run.diagnostics) {
        out.os() << "# total_variation method=" << static_cast<int>(d.method)
                 << " seed=" << d.seed << " tv=" << fmt(d.total_variation) << '\n';
    }
}

struct QuantizeArgs {
    std::string in, out;
    double threshold = 0.008;
    bool log_returns = false;
};

void run_quantize(const QuantizeArgs& a) {
    const DatedSeries series = load_csv_series(a.in);
    const SymbolSequence seq =
        quantize_returns(series.values, a.threshold,
                         a.log_returns ? ReturnKind::log : ReturnKind::simple);
    Output out(a.out);
    RunSpec spec("quantize");
    spec.add("in", a.in).add("threshold", a.threshold).add("log_returns", a.log_returns ? "1" : "0");
    spec.print(out.os());
    out.os() << "date,symbol\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out.os() << series.dates[i + 1] << ',' << seq[i] << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed information estimation for finite-alphabet time series"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    const char* tool_default = " [tool default, not a published constant]";

    // estimate
    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "DI, reverse DI and MI between two sequences");
    estimate->add_option("--x", est.x_path, "candidate cause input file")->required();
    estimate->add_option("--y", est.y_path, "candidate effect input file")->required();
    estimate->add_option("--format", est.format,
                         "input format: 'symbols' (one index per line) or 'dated' (date,value)");
    estimate->add_option("--alphabet", est.alphabet,
                         "alphabet size for symbol inputs (0 = largest symbol + 1)");
    estimate->add_option("--method", est.method, std::string("estimator 1|2|3|4") +
                         tool_default)->check(CLI::Range(1, 4));
    estimate->add_option("--depth", est.depth, "context tree depth D");
    estimate->add_option("--threshold", est.threshold,
                         "quantization threshold for dated inputs");
    estimate->add_flag("--log-returns", est.log_returns,
                       std::string("quantize log returns instead of relative changes") +
                       tool_default);
    estimate->add_option("--y-offset", est.y_offset,
                         std::string("pair x_i with y_{i+k}") + tool_default);
    estimate->add_option("--trace", est.trace_path, "write the forward per-step trace CSV here");
    estimate->add_option("--out", est.out, "output file");
    estimate->callback([&] { run_estimate(est); });

    // simulate
    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic pair");
    simulate->add_option("variant", sim.variant, "markov-bsc | isi | coupled-bsc | iid-pair")
        ->required();
    simulate->add_option("--p", sim.p, "source flip probability");
    simulate->add_option("--eps", sim.eps, "channel crossover");
    simulate->add_option("--alpha", sim.alpha, "forward-channel crossover");
    simulate->add_option("--beta", sim.beta, "backward-channel crossover");
    simulate->add_option("--q", sim.q, "iid Bernoulli parameter");
    simulate->add_flag("--copy", sim.copy, "make y a copy of x for iid-pair");
    simulate->add_option("--delay", sim.delay, "channel delay D' for isi");
    simulate->add_option("--n", sim.n, "sequence length");
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--out", sim.out, "two-column x,y output");
    simulate->add_option("--out-x", sim.out_x, "single-column x output file");
    simulate->add_option("--out-y", sim.out_y, "single-column y output file");
    simulate->callback([&] { run_simulate(sim); });

    // delay-scan
    DelayScanArgs scan;
    CLI::App* dscan = app.add_subcommand("delay-scan",
                                         "scan shifted DI across candidate delays");
    dscan->add_option("source", scan.source, "optional generator: isi");
    dscan->add_option("--x", scan.x_path, "candidate cause symbol file");
    dscan->add_option("--y", scan.y_path, "candidate effect symbol file");
    dscan->add_option("--alphabet", scan.alphabet, "alphabet size for symbol inputs (0 = largest symbol + 1)");
    dscan->add_option("--p", scan.p, std::string("isi input flip probability") +
                      tool_default);
    dscan->add_option("--eps", scan.eps, std::string("isi noise level") +
                      tool_default);
    dscan->add_option("--delay", scan.delay, "isi channel delay D'");
    dscan->add_option("--n", scan.n, "sequence length");
    dscan->add_option("--seed", scan.seed, "random seed");
    dscan->add_option("--dmax", scan.dmax, std::string("largest shift scanned") +
                      tool_default);
    dscan->add_option("--method", scan.method, "estimator 1|2|3|4")
        ->check(CLI::Range(1, 4));
    dscan->add_option("--depth", scan.depth, "context tree depth");
    dscan->add_option("--threshold", scan.threshold,
                      std::string("detection threshold in bits") + tool_default);
    dscan->add_option("--out", scan.out, "output file");
    dscan->callback([&] { run_delay_scan(scan); });

    // causality
    CausalityArgs caus;
    CLI::App* causality = app.add_subcommand(
        "causality", "estimate both directions and classify the influence");
    causality->add_option("source", caus.source, "optional generator: coupled-bsc");
    causality->add_option("--x", caus.x_path, "candidate cause symbol file");
    causality->add_option("--y", caus.y_path, "candidate effect symbol file");
    causality->add_option("--alphabet", caus.alphabet, "alphabet size for symbol inputs (0 = largest symbol + 1)");
    causality->add_option("--alpha", caus.alpha, "forward-channel crossover");
    causality->add_option("--beta", caus.beta, "backward-channel crossover");
    causality->add_option("--n", caus.n, "sequence length");
    causality->add_option("--seed", caus.seed, "random seed");
    causality->add_option("--method", caus.method, "estimator 1|2|3|4")
        ->check(CLI::Range(1, 4));
    causality->add_option("--depth", caus.depth, "context tree depth");
    causality->add_option("--tau", caus.tau,
                          std::string("independence threshold in bits") +
                          tool_default);
    causality->add_option("--rho", caus.rho,
                          std::string("dominance ratio") + tool_default);
    causality->add_option("--out", caus.out, "output file");
    causality->callback([&] { run_causality(caus); });

    // convergence
    ConvergenceArgs conv;
    CLI::App* convergence = app.add_subcommand(
        "convergence", "estimates across a grid of lengths with the analytic reference");
    convergence->add_option("variant", conv.sim.variant, "markov-bsc | coupled-bsc | iid-pair")
        ->required();
    convergence->add_option("--p", conv.sim.p, "source flip probability");
    convergence->add_option("--eps", conv.sim.eps, "channel crossover");
    convergence->add_option("--alpha", conv.sim.alpha, "forward crossover");
    convergence->add_option("--beta", conv.sim.beta, "backward crossover");
    convergence->add_option("--q", conv.sim.q, "iid Bernoulli parameter");
    convergence->add_flag("--copy", conv.sim.copy, "make y a copy of x for iid-pair");
    convergence->add_option("--n", conv.sim.n, "largest length");
    convergence->add_option("--depth", conv.depth, "context tree depth");
    convergence->add_option("--seeds", conv.seeds, "number of seeds");
    convergence->add_option("--seed-base", conv.seed_base, "first seed");
    convergence->add_option("--methods", conv.methods, "comma list of estimators");
    convergence->add_option("--grid", conv.grid,
                            std::string("comma list of lengths; default log-spaced") +
                            tool_default);
    convergence->add_option("--out", conv.sim.out, "output file");
    convergence->callback([&] { run_convergence(conv); });

    // quantize
    QuantizeArgs quant;
    CLI::App* quantize = app.add_subcommand("quantize",
                                            "ternary-quantize a dated value series");
    quantize->add_option("--in", quant.in, "date,value CSV input")->required();
    quantize->add_option("--threshold", quant.threshold,
                         "relative-change threshold");
    quantize->add_flag("--log-returns", quant.log_returns,
                       std::string("quantize log returns instead of relative changes") +
                       tool_default);
    quantize->add_option("--out", quant.out, "output file");
    quantize->callback([&] { run_quantize(quant); });

    // oracle
    CLI::App* oracle = app.add_subcommand("oracle", "closed-form and exact reference values");
    oracle->require_subcommand(1);

    struct OracleArgs {
        double p = 0.3, eps = 0.2, alpha = 0.1, beta = 0.2, q = 0.5;
        bool copy = false;
        std::uint64_t n = 256;
        std::uint32_t gamma = 2, states = 1, exact_n = 10;
        std::string out;
    } oa;

    CLI::App* o_coupled = oracle->add_subcommand("coupled-bsc", "rates of the two-way system");
    o_coupled->add_option("--alpha", oa.alpha, "forward crossover")->required();
    o_coupled->add_option("--beta", oa.beta, "backward crossover")->required();
    o_coupled->add_option("--out", oa.out, "output file");
    o_coupled->callback([&] {
        const CoupledBscRates r = coupled_bsc_rates(oa.alpha, oa.beta);
        Output out(oa.out);
        RunSpec("oracle coupled-bsc").add("alpha", oa.alpha).add("beta", oa.beta).print(out.os());
        out.os() << "di=" << fmt(r.di, 4) << ", rev=" << fmt(r.reverse, 4)
                 << ", mi=" << fmt(r.mi, 4) << '\n';
    });

    CLI::App* o_markov = oracle->add_subcommand(
        "markov-bsc", "observation-to-source rate of the Markov-through-BSC system");
    o_markov->add_option("--p", oa.p, "source flip probability")->required();
    o_markov->add_option("--eps", oa.eps, "channel crossover")->required();
    o_markov->add_option("--out", oa.out, "output file");
    o_markov->callback([&] {
        Output out(oa.out);
        RunSpec("oracle markov-bsc").add("p", oa.p).add("eps", oa.eps).print(out.os());
        out.os() << "rate=" << fmt(markov_bsc_rate(oa.p, oa.eps), 4) << '\n';
    });

    CLI::App* o_entropy = oracle->add_subcommand("entropy", "binary entropy H_b(p)");
    o_entropy->add_option("--p", oa.p, "probability")->required();
    o_entropy->add_option("--out", oa.out, "output file");
    o_entropy->callback([&] {
        Output out(oa.out);
        RunSpec("oracle entropy").add("p", oa.p).print(out.os());
        out.os() << "hb=" << fmt(binary_entropy(oa.p), 4) << '\n';
    });

    CLI::App* o_bound = oracle->add_subcommand("redundancy-bound",
                                               "pointwise CTW redundancy budget");
    o_bound->add_option("--gamma", oa.gamma, "alphabet size")->required();
    o_bound->add_option("--states", oa.states, "state count")->required();
    o_bound->add_option("--n", oa.n, "sequence length")->required();
    o_bound->add_option("--out", oa.out, "output file");
    o_bound->callback([&] {
        Output out(oa.out);
        RunSpec("oracle redundancy-bound")
            .add("gamma", std::uint64_t(oa.gamma))
            .add("states", std::uint64_t(oa.states))
            .add("n", oa.n)
            .print(out.os());
        out.os() << "bound=" << fmt(ctw_redundancy_bound(oa.gamma, oa.states, oa.n), 4) << '\n';
    });

    auto print_exact = [&](const JointProcessModel& model, RunSpec spec) {
        const ExactDi r = exact_di(model, oa.exact_n);
        Output out(oa.out);
        spec.add("n", std::uint64_t(oa.exact_n)).print(out.os());
        out.os() << "di=" << fmt(r.di, 4) << ", rev=" << fmt(r.reverse, 4)
                 << ", mi=" << fmt(r.mi, 4) << ", di_delayed=" << fmt(r.di_delayed, 4)
                 << ", instantaneous=" << fmt(r.instantaneous, 4) << '\n';
    };

    CLI::App* o_exact_m = oracle->add_subcommand(
        "exact-markov-bsc", "finite-n exact values for the Markov-through-BSC pair (Y, X)");
    o_exact_m->add_option("--p", oa.p, "source flip probability")->required();
    o_exact_m->add_option("--eps", oa.eps, "channel crossover")->required();
    o_exact_m->add_option("--n", oa.exact_n, "block length");
    o_exact_m->add_option("--out", oa.out, "output file");
    o_exact_m->callback([&] {
        print_exact(swap_roles(markov_bsc_model(oa.p, oa.eps)),
                    RunSpec("oracle exact-markov-bsc").add("p", oa.p).add("eps", oa.eps));
    });

    CLI::App* o_exact_c = oracle->add_subcommand("exact-coupled-bsc",
                                                 "finite-n exact values for the two-way system");
    o_exact_c->add_option("--alpha", oa.alpha, "forward crossover")->required();
    o_exact_c->add_option("--beta", oa.beta, "backward crossover")->required();
    o_exact_c->add_option("--n", oa.exact_n, "block length");
    o_exact_c->add_option("--out", oa.out, "output file");
    o_exact_c->callback([&] {
        print_exact(coupled_bsc_model(oa.alpha, oa.beta),
                    RunSpec("oracle exact-coupled-bsc").add("alpha", oa.alpha).add("beta", oa.beta));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
