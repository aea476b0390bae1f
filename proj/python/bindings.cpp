#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntband/config.hpp"
#include "ntband/ensemble.hpp"
#include "ntband/errors.hpp"
#include "ntband/market.hpp"
#include "ntband/report.hpp"
#include "ntband/strategy.hpp"
#include "ntband/utility.hpp"

namespace py = pybind11;
using namespace ntband;

namespace {

StrategySpec make_spec(const std::string& kind,
                       const std::optional<std::vector<double>>& weights,
                       const std::optional<std::vector<double>>& width_coeffs) {
    StrategySpec spec;
    spec.kind = parse_strategy_kind(kind);
    spec.weights = weights;
    spec.width_coeffs = width_coeffs;
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-asset no-transaction-band portfolio optimizer and simulator";
    m.attr("__version__") = kArtifactVersion;

    py::register_exception<DimensionMismatch>(m, "DimensionMismatchError");
    py::register_exception<InvalidCorrelation>(m, "InvalidCorrelationError");
    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefiniteError");
    py::register_exception<DomainError>(m, "DomainValueError");
    py::register_exception<ConfigError>(m, "ConfigurationError");
    py::register_exception<GridMismatch>(m, "GridMismatchError");

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<double, std::vector<double>, std::vector<double>,
                      std::vector<std::vector<double>>, double, double, double>(),
             py::arg("r"), py::arg("mu"), py::arg("sigma"), py::arg("rho"),
             py::arg("k"), py::arg("T"), py::arg("dt"))
        .def_property_readonly("n_assets", &MarketParams::n_assets)
        .def_property_readonly("r", &MarketParams::r)
        .def_property_readonly("mu", &MarketParams::mu)
        .def_property_readonly("sigma", &MarketParams::sigma)
        .def_property_readonly("k", &MarketParams::k)
        .def_property_readonly("T", &MarketParams::horizon)
        .def_property_readonly("dt", &MarketParams::dt)
        .def_property_readonly("mu_hat", &MarketParams::mu_hat);

    py::class_<LtgmModel>(m, "LtgmModel")
        .def(py::init<const MarketParams&>(), py::arg("params"))
        .def_property_readonly("weights", &LtgmModel::weights)
        .def_property_readonly("bond_weight", &LtgmModel::bond_weight)
        .def_property_readonly("growth_rate", &LtgmModel::growth_rate)
        .def("value", &LtgmModel::value, py::arg("pi"), py::arg("t"))
        .def("optimal_curve", &LtgmModel::optimal_curve, py::arg("pi"), py::arg("t"));

    m.def("optimal_weights", &optimal_weights, py::arg("params"));
    m.def("ltgm_value", &ltgm_value, py::arg("pi"), py::arg("t"), py::arg("params"));
    m.def("expected_log_payoff", &expected_log_payoff, py::arg("params"),
          py::arg("pi0"), py::arg("weights"));
    m.def("band_width_ltgm", &band_width_ltgm, py::arg("params"), py::arg("k"),
          py::arg("pi"));
    m.def("band_width_general", &band_width_general, py::arg("d_ii"),
          py::arg("sigma_i"), py::arg("dh0_dpi"), py::arg("d2h0_dpi2"), py::arg("k"));
    m.def(
        "d_matrix",
        [](const MarketParams& params, const LtgmModel& model, double pi, double t) {
            const DMatrix d = d_matrix(params, model, pi, t);
            std::vector<std::vector<double>> rows(d.n, std::vector<double>(d.n));
            for (std::size_t i = 0; i < d.n; ++i) {
                for (std::size_t j = 0; j < d.n; ++j) {
                    rows[i][j] = d(i, j);
                }
            }
            return rows;
        },
        py::arg("params"), py::arg("model"), py::arg("pi"), py::arg("t"));

    py::class_<EnsembleSummary>(m, "EnsembleSummary")
        .def_readonly("times", &EnsembleSummary::times)
        .def_readonly("mean_log_wealth", &EnsembleSummary::mean_log_wealth)
        .def_readonly("sem", &EnsembleSummary::sem)
        .def_readonly("paths", &EnsembleSummary::paths)
        .def_readonly("completed", &EnsembleSummary::completed)
        .def_readonly("aborted", &EnsembleSummary::aborted)
        .def_readonly("total_cost", &EnsembleSummary::total_cost)
        .def_readonly("total_traded", &EnsembleSummary::total_traded)
        .def_readonly("trade_count", &EnsembleSummary::trade_count);

    py::class_<DifferenceSeries>(m, "DifferenceSeries")
        .def_readonly("times", &DifferenceSeries::times)
        .def_readonly("mean_diff", &DifferenceSeries::mean_diff)
        .def_readonly("sem", &DifferenceSeries::sem)
        .def_readonly("paired", &DifferenceSeries::paired)
        .def_readonly("n", &DifferenceSeries::n);

    m.def(
        "run_ensemble",
        [](const MarketParams& params, const std::string& strategy,
           std::uint64_t base_seed, std::size_t paths, std::size_t recording_points,
           unsigned workers, const std::optional<std::vector<double>>& weights,
           const std::optional<std::vector<double>>& width_coeffs) {
            const LtgmModel model(params);
            const RecordingGrid grid = make_recording_grid(params, recording_points);
            return run_ensemble(params, make_spec(strategy, weights, width_coeffs),
                                model, base_seed, paths, grid, workers);
        },
        py::arg("params"), py::arg("strategy"), py::arg("base_seed"), py::arg("paths"),
        py::arg("recording_points") = 200, py::arg("workers") = 0,
        py::arg("weights") = std::nullopt, py::arg("width_coeffs") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());

    m.def("compare", &compare, py::arg("a"), py::arg("b"));
}
