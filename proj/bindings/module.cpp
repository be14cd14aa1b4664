#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ctwdi/analysis.hpp"
#include "ctwdi/core.hpp"
#include "ctwdi/ctw.hpp"
#include "ctwdi/estimators.hpp"
#include "ctwdi/ingest.hpp"
#include "ctwdi/oracle.hpp"
#include "ctwdi/sources.hpp"

namespace py = pybind11;
using namespace ctwdi;

namespace {

SymbolSequence make_sequence(std::uint32_t alphabet_size, const std::vector<Symbol>& data) {
    return SymbolSequence(Alphabet(alphabet_size), data);
}

std::vector<Symbol> to_vector(const SymbolSequence& s) {
    return {s.symbols().begin(), s.symbols().end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "directed information rate estimation via context-tree weighting";

    py::enum_<EstimatorMethod>(m, "EstimatorMethod")
        .value("logloss", EstimatorMethod::logloss)
        .value("entropy", EstimatorMethod::entropy)
        .value("conditional_kl", EstimatorMethod::conditional_kl)
        .value("joint_kl", EstimatorMethod::joint_kl);

    py::enum_<InitialContext>(m, "InitialContext")
        .value("from_data", InitialContext::from_data)
        .value("zero_pad", InitialContext::zero_pad);

    py::enum_<CausalVerdict>(m, "CausalVerdict")
        .value("x_causes_y", CausalVerdict::x_causes_y)
        .value("y_causes_x", CausalVerdict::y_causes_x)
        .value("mutual", CausalVerdict::mutual)
        .value("independent", CausalVerdict::independent);

    py::class_<Alphabet>(m, "Alphabet")
        .def(py::init<std::uint32_t>(), py::arg("size"))
        .def_property_readonly("size", &Alphabet::size)
        .def("__repr__", [](const Alphabet& a) {
            return "Alphabet(" + std::to_string(a.size()) + ")";
        });

    py::class_<SymbolSequence>(m, "SymbolSequence")
        .def(py::init(&make_sequence), py::arg("alphabet_size"), py::arg("symbols"))
        .def_property_readonly("alphabet_size",
                               [](const SymbolSequence& s) { return s.alphabet().size(); })
        .def_property_readonly("symbols", &to_vector)
        .def("__len__", &SymbolSequence::size);

    py::class_<CausalPair>(m, "CausalPair")
        .def(py::init<SymbolSequence, SymbolSequence>(), py::arg("cause"), py::arg("effect"))
        .def_readonly("x", &CausalPair::x)
        .def_readonly("y", &CausalPair::y)
        .def("__len__", &CausalPair::size);

    py::class_<Pmf>(m, "Pmf")
        .def_property_readonly("weights",
                               [](const Pmf& p) {
                                   return std::vector<double>(p.weights().begin(),
                                                              p.weights().end());
                               })
        .def("entropy_bits", &Pmf::entropy_bits);

    py::class_<EstimatorTrace>(m, "EstimatorTrace")
        .def_readonly("method", &EstimatorTrace::method)
        .def_readonly("depth", &EstimatorTrace::depth)
        .def_readonly("skipped", &EstimatorTrace::skipped)
        .def_readonly("partials", &EstimatorTrace::partials)
        .def_readonly("final_bits", &EstimatorTrace::final_bits);

    py::class_<ContextTree>(m, "ContextTree")
        .def(py::init([](std::uint32_t alphabet_size, std::uint32_t depth) {
                 return ContextTree(Alphabet(alphabet_size), depth);
             }),
             py::arg("alphabet_size"), py::arg("depth"))
        .def("update",
             [](ContextTree& t, Symbol s, const std::vector<Symbol>& ctx) { t.update(s, ctx); },
             py::arg("symbol"), py::arg("context"))
        .def("predict",
             [](const ContextTree& t, const std::vector<Symbol>& ctx) { return t.predict(ctx); },
             py::arg("context"))
        .def("assignment_log2_prob",
             [](const ContextTree& t) { return t.assignment_log_prob().bits; })
        .def_property_readonly("symbols_seen", &ContextTree::symbols_seen)
        .def("dump", [](const ContextTree& t) {
            std::ostringstream os;
            t.dump(os);
            return os.str();
        });

    // core operations
    m.def("pair_symbols", &pair_symbols, py::arg("x"), py::arg("y"));
    m.def(
        "unpair_symbols",
        [](const SymbolSequence& z, std::uint32_t mx, std::uint32_t my) {
            return unpair_symbols(z, Alphabet(mx), Alphabet(my));
        },
        py::arg("z"), py::arg("x_alphabet_size"), py::arg("y_alphabet_size"));
    m.def(
        "quantize_returns",
        [](const std::vector<double>& values, double threshold, bool log_returns) {
            return quantize_returns(values, threshold,
                                    log_returns ? ReturnKind::log : ReturnKind::simple);
        },
        py::arg("values"), py::arg("threshold") = 0.008, py::arg("log_returns") = false);

    // estimators
    m.def("estimate_di", &estimate_di, py::arg("pair"), py::arg("method"), py::arg("depth"),
          py::arg("init") = InitialContext::from_data);
    m.def("reverse_di", &reverse_di, py::arg("pair"), py::arg("method"), py::arg("depth"),
          py::arg("init") = InitialContext::from_data);
    m.def("mutual_info", &mutual_info, py::arg("pair"), py::arg("method"), py::arg("depth"),
          py::arg("init") = InitialContext::from_data);
    m.def("shifted_di", &shifted_di, py::arg("pair"), py::arg("d"), py::arg("method"),
          py::arg("depth"), py::arg("init") = InitialContext::from_data);

    // oracle
    m.def("binary_entropy", &binary_entropy, py::arg("p"));
    m.def("markov_bsc_rate", &markov_bsc_rate, py::arg("p"), py::arg("eps"));
    m.def(
        "coupled_bsc_rates",
        [](double alpha, double beta) {
            const CoupledBscRates r = coupled_bsc_rates(alpha, beta);
            return py::make_tuple(r.di, r.reverse, r.mi);
        },
        py::arg("alpha"), py::arg("beta"));
    m.def("ctw_redundancy_bound", &ctw_redundancy_bound, py::arg("gamma"), py::arg("states"),
          py::arg("n"));
    m.def(
        "exact_markov_bsc",
        [](double p, double eps, std::uint32_t n) {
            const ExactDi r = exact_di(swap_roles(markov_bsc_model(p, eps)), n);
            return py::make_tuple(r.di, r.reverse, r.mi);
        },
        py::arg("p"), py::arg("eps"), py::arg("n") = 10,
        "exact finite-n (di, reverse, mi) of the pair (observation, source)");
    m.def(
        "exact_coupled_bsc",
        [](double alpha, double beta, std::uint32_t n) {
            const ExactDi r = exact_di(coupled_bsc_model(alpha, beta), n);
            return py::make_tuple(r.di, r.reverse, r.mi);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n") = 10);

    // sources
    m.def("gen_markov_binary", &gen_markov_binary, py::arg("p"), py::arg("n"), py::arg("seed"));
    m.def("bsc", &bsc, py::arg("x"), py::arg("eps"), py::arg("seed"));
    m.def("isi_delay_channel", &isi_delay_channel, py::arg("x"), py::arg("delay"),
          py::arg("eps"), py::arg("seed"));
    m.def("coupled_bsc_system", &coupled_bsc_system, py::arg("alpha"), py::arg("beta"),
          py::arg("n"), py::arg("seed"));
    m.def("iid_pair", &iid_pair, py::arg("q"), py::arg("copy"), py::arg("n"), py::arg("seed"));

    // analysis
    py::class_<DelayScanResult>(m, "DelayScanResult")
        .def_readonly("estimates", &DelayScanResult::estimates)
        .def_readonly("threshold", &DelayScanResult::threshold)
        .def_property_readonly("detected", [](const DelayScanResult& r) -> py::object {
            if (r.detected) return py::int_(*r.detected);
            return py::none();
        });

    py::class_<CausalityThresholds>(m, "CausalityThresholds")
        .def(py::init([](double tau, double rho) {
                 return CausalityThresholds{tau, rho};
             }),
             py::arg("tau_abs") = 0.02, py::arg("rho_ratio") = 2.0)
        .def_readonly("tau_abs", &CausalityThresholds::tau_abs)
        .def_readonly("rho_ratio", &CausalityThresholds::rho_ratio);

    py::class_<CausalityReport>(m, "CausalityReport")
        .def_readonly("di", &CausalityReport::di)
        .def_readonly("reverse", &CausalityReport::reverse)
        .def_readonly("mi", &CausalityReport::mi)
        .def_readonly("verdict", &CausalityReport::verdict);

    m.def("delay_scan", &delay_scan, py::arg("pair"), py::arg("d_max"), py::arg("method"),
          py::arg("depth"), py::arg("threshold") = 0.02);
    m.def("classify_causality", &classify_causality, py::arg("di"), py::arg("reverse"),
          py::arg("thresholds") = CausalityThresholds{});
    m.def("measure_causality", &measure_causality, py::arg("pair"), py::arg("method"),
          py::arg("depth"), py::arg("thresholds") = CausalityThresholds{});

    m.attr("__version__") = "0.1.0";
}
