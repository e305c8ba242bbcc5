#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risdof/channel.hpp"
#include "risdof/errors.hpp"
#include "risdof/harness.hpp"
#include "risdof/numerics.hpp"
#include "risdof/placement.hpp"
#include "risdof/rate.hpp"
#include "risdof/scenario.hpp"
#include "risdof/simulation.hpp"

namespace py = pybind11;
using namespace risdof;

namespace {

ExperimentConfig source(const std::string& preset_or_json) {
    return is_preset(preset_or_json) ? preset(preset_or_json) : parse_experiment(preset_or_json);
}

py::dict trial_dict(const TrialOutcome& t) {
    py::dict d;
    d["rate"] = t.rate;
    d["effective_rank"] = t.effective_rank;
    d["stream_count"] = t.stream_count;
    d["stream_powers"] = t.stream_powers;
    d["per_stream_snr_db"] = t.per_stream_snr_db;
    d["amplification"] = t.amplification;
    d["transmit_power"] = t.transmit_power;
    d["ris_power"] = t.ris_power;
    d["composite"] = t.composite;
    return d;
}

} // namespace

PYBIND11_MODULE(_risdof, m) {
    m.doc() = "Rank and rate of RIS-assisted MIMO links";

    // later registrations are tried first, so the subclass goes after its base
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", numerical.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("numerical_rank", [](const ComplexMatrix& a) { return numerical_rank(a); }, py::arg("a"));
    m.def("singular_values", [](const ComplexMatrix& a) { return RealVector(svd(a).singular_values); },
          py::arg("a"));
    m.def(
        "water_filling",
        [](const std::vector<double>& gains, double total, double noise) {
            const PowerAllocation p = water_filling(gains, total, noise);
            return py::make_tuple(p.per_stream_power, p.water_level);
        },
        py::arg("gains"), py::arg("total_power"), py::arg("noise_power"));
    m.def(
        "steering_vector",
        [](int elements, double angle) {
            return ComplexVector(steering_vector(ArrayGeometry::half_wavelength(elements), angle));
        },
        py::arg("elements"), py::arg("angle"));
    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("watts_to_dbm", &watts_to_dbm);

    m.def(
        "plan",
        [](int k, int m_bs, int n, bool los_direct) {
            PlacementRequest req;
            req.target_rank = k;
            req.direct_rank = los_direct ? 1 : 0;
            req.bs = ArrayGeometry::half_wavelength(m_bs);
            req.user = ArrayGeometry::half_wavelength(k);
            req.total_elements = n;
            const PlacementPlan plan = plan_distributed(req);
            PlanLinks links;
            links.bs = req.bs;
            links.user = req.user;
            const PlanEvaluation ev = evaluate_plan(plan, links);
            py::list sites;
            for (const RisSite& s : plan.sites) {
                py::dict d;
                d["aod_from_bs"] = s.aod_from_bs;
                d["aoa_at_user"] = s.aoa_at_user;
                d["element_count"] = s.element_count;
                d["aligned_with_direct"] = s.aligned_with_direct;
                sites.append(d);
            }
            py::dict out;
            out["sites"] = sites;
            out["rank"] = ev.rank;
            out["condition_number"] = ev.condition_number;
            out["report"] = format_site_report(plan, ev);
            return out;
        },
        py::arg("k") = 4, py::arg("m") = 64, py::arg("n") = 256, py::arg("los_direct") = true);

    m.def("preset_names", &preset_names);
    m.def(
        "experiment_json", [](const std::string& src) { return experiment_to_json(source(src)); },
        py::arg("source"));
    m.def(
        "evaluate_trial",
        [](const std::string& src, std::size_t scenario, double sweep_value, std::uint64_t seed) {
            const ExperimentConfig e = source(src);
            if (scenario >= e.scenarios.size()) {
                throw py::index_error("scenario index out of range");
            }
            TrialOutcome t;
            {
                py::gil_scoped_release release;
                t = evaluate_trial(e.scenarios[scenario].at_sweep_value(sweep_value), seed);
            }
            return trial_dict(t);
        },
        py::arg("source"), py::arg("scenario"), py::arg("sweep_value"), py::arg("seed") = 1);
    m.def(
        "run",
        [](const std::string& src, int workers) {
            const ExperimentConfig e = source(src);
            std::vector<SweepRecord> records;
            {
                py::gil_scoped_release release;
                records = run_experiment(e, workers);
            }
            return py::make_tuple(records_csv(records), summary_csv(summarize(records, e)));
        },
        py::arg("source"), py::arg("workers") = 1,
        "Run every scenario. Returns (records_csv, summary_csv).");
}
