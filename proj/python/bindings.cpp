// Python bindings for the core operations: the closed-form contention /
// throughput chain, the joint association + threshold optimizer, and the
// experiment harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "densewlan/config.hpp"
#include "densewlan/contention.hpp"
#include "densewlan/harness.hpp"
#include "densewlan/io.hpp"
#include "densewlan/link_metrics.hpp"
#include "densewlan/optimizer.hpp"
#include "densewlan/throughput.hpp"
#include "densewlan/units.hpp"

namespace py = pybind11;
using namespace dw;

namespace {

ThetaModel model_from_flag(bool paper_theta) {
    return paper_theta ? ThetaModel::kPaperErf : ThetaModel::kQuadrature;
}

} // namespace

PYBIND11_MODULE(_densewlan, m) {
    m.doc() = "Dense full-duplex CSMA/CA WLAN model: Matern contention, "
              "throughput density, and joint association/threshold optimization";

    m.def("db_to_linear", [](double db) { return db_to_linear({db}); }, py::arg("db"));
    m.def("linear_to_db", [](double x) { return linear_to_db(x).value; }, py::arg("x"));
    m.def("dbm_to_mw", &dbm_to_mw, py::arg("dbm"));
    m.def("mw_to_dbm", &mw_to_dbm, py::arg("mw"));

    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Window>(m, "Window")
        .def(py::init<>())
        .def(py::init([](double w, double h) { return Window{w, h}; }), py::arg("width"),
             py::arg("height"))
        .def_readwrite("width", &Window::width)
        .def_readwrite("height", &Window::height)
        .def("area", &Window::area);

    py::class_<NetworkConfig>(m, "NetworkConfig")
        .def(py::init<>())
        .def_readwrite("lambda_s", &NetworkConfig::lambda_s)
        .def_readwrite("lambda_a", &NetworkConfig::lambda_a)
        .def_readwrite("alpha", &NetworkConfig::alpha)
        .def_readwrite("p_tx", &NetworkConfig::p_tx)
        .def_readwrite("noise", &NetworkConfig::noise)
        .def_readwrite("gamma", &NetworkConfig::gamma)
        .def_readwrite("pcs", &NetworkConfig::pcs)
        .def_readwrite("m_tx", &NetworkConfig::m_tx)
        .def_readwrite("n_rx", &NetworkConfig::n_rx)
        .def_readwrite("k_factor", &NetworkConfig::k_factor)
        .def_readwrite("si_atten", &NetworkConfig::si_atten)
        .def_readwrite("window", &NetworkConfig::window)
        .def_readwrite("seed", &NetworkConfig::seed)
        .def_property_readonly("lambda_fd", &NetworkConfig::lambda_fd);

    m.def("validate", &validate, py::arg("cfg"));
    m.def("parse_config_text", &io::parse_config_text, py::arg("text"));
    m.def("config_content_hash", &io::config_content_hash, py::arg("cfg"));

    py::class_<Point>(m, "Point")
        .def_readonly("x", &Point::x)
        .def_readonly("y", &Point::y);
    py::class_<PointSet>(m, "PointSet")
        .def_readonly("points", &PointSet::points)
        .def_readonly("density", &PointSet::density)
        .def_readonly("window", &PointSet::window)
        .def_readonly("seed", &PointSet::seed)
        .def("empirical_density", &PointSet::empirical_density)
        .def("__len__", [](const PointSet& s) { return s.points.size(); });

    m.def("sample_ppp", &sample_ppp, py::arg("intensity"), py::arg("window"), py::arg("seed"));
    m.def("superpose", &superpose, py::arg("a"), py::arg("b"));
    m.def("nn_distance_pdf", &nn_distance_pdf, py::arg("r"), py::arg("intensity"));
    m.def("paper_mean_nn", &paper_mean_nn, py::arg("intensity"));
    m.def("mean_path_loss", &mean_path_loss, py::arg("intensity"), py::arg("alpha"));

    py::class_<ThinningResult>(m, "ThinningResult")
        .def_readonly("retained", &ThinningResult::retained)
        .def_readonly("empirical_p", &ThinningResult::empirical_p);
    m.def(
        "simulate_matern_thinning",
        [](const PointSet& points, const std::vector<double>& marks, double cs_range) {
            ThinningInput in;
            in.points = points;
            in.marks = marks;
            in.cs_range = cs_range;
            return simulate_matern_thinning(in);
        },
        py::arg("points"), py::arg("marks"), py::arg("cs_range"));

    m.def("theta_numeric", &theta_numeric, py::arg("pcs"), py::arg("alpha"),
          py::arg("dist_scale") = 1.0);
    m.def("theta_closed_form", &theta_closed_form, py::arg("pcs"), py::arg("path_loss"));
    m.def("access_probability", &access_probability, py::arg("intensity"), py::arg("theta"));
    m.def("active_density", &active_density, py::arg("intensity"), py::arg("theta"));
    m.def(
        "hd_active_densities",
        [](const NetworkConfig& cfg, bool paper_theta) {
            const HdActiveDensities d = hd_active_densities(cfg, model_from_flag(paper_theta));
            return std::make_pair(d.lambda_tilde_s, d.lambda_tilde_a);
        },
        py::arg("cfg"), py::arg("paper_theta") = false);
    m.def(
        "fd_access_probability",
        [](const NetworkConfig& cfg, bool paper_theta) {
            return fd_access_probability(cfg, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("paper_theta") = false);
    m.def(
        "fd_active_density",
        [](const NetworkConfig& cfg, bool paper_theta) {
            return fd_active_density(cfg, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("paper_theta") = false);
    m.def("pcs_upper_bound", &pcs_upper_bound, py::arg("xi"), py::arg("dist"), py::arg("cfg"));

    py::class_<SiGammaParams>(m, "SiGammaParams")
        .def_readonly("mu", &SiGammaParams::mu)
        .def_readonly("psi2", &SiGammaParams::psi2)
        .def_readonly("xi_factor", &SiGammaParams::xi_factor)
        .def_readonly("shape", &SiGammaParams::shape)
        .def_readonly("scale", &SiGammaParams::scale);
    m.def("si_gamma_params", &si_gamma_params, py::arg("k_factor"), py::arg("si_atten"),
          py::arg("m_tx"), py::arg("n_rx"));

    m.def(
        "stp_fd_analytic",
        [](const NetworkConfig& cfg, double xi, double ell_des, double lt_s, double lt_a) {
            const StpValue v = stp_fd_analytic(cfg, xi, ell_des, lt_s, lt_a);
            return std::make_pair(v.value, v.clamped);
        },
        py::arg("cfg"), py::arg("xi"), py::arg("ell_des"), py::arg("lt_s"), py::arg("lt_a"));

    py::enum_<Direction>(m, "Direction")
        .value("UL", Direction::kUplink)
        .value("DL", Direction::kDownlink)
        .value("FD", Direction::kFullDuplex);
    m.def(
        "stp_monte_carlo",
        [](const NetworkConfig& cfg, Direction dir, std::size_t n, double desired_dist,
           double cs_range) {
            McStpOptions opt;
            opt.desired_dist = desired_dist;
            opt.cs_range = cs_range;
            const McEstimate e = stp_monte_carlo(cfg, dir, n, opt);
            return std::make_tuple(e.estimate, e.stderr_, e.n);
        },
        py::arg("cfg"), py::arg("direction"), py::arg("n_realizations"),
        py::arg("desired_dist") = 0.0, py::arg("cs_range") = 0.0);

    py::class_<SdtReport>(m, "SdtReport")
        .def_readonly("active_density", &SdtReport::active_density)
        .def_readonly("stp", &SdtReport::stp)
        .def_readonly("sdt", &SdtReport::sdt)
        .def_readonly("stp_clamped", &SdtReport::stp_clamped);
    m.def(
        "sdt_hd",
        [](const NetworkConfig& cfg, Direction dir, bool paper_theta) {
            return sdt_hd(cfg, dir, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("direction"), py::arg("paper_theta") = false);
    m.def(
        "sdt_fd",
        [](const NetworkConfig& cfg, double xi, bool paper_theta) {
            return sdt_fd(cfg, xi, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("xi"), py::arg("paper_theta") = false);
    m.def(
        "ssf_mean_rate",
        [](const NetworkConfig& cfg, bool paper_theta) {
            return ssf_mean_rate(cfg, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("paper_theta") = false);

    py::class_<JapoResult>(m, "JapoResult")
        .def_readonly("gamma_star", &JapoResult::gamma_star)
        .def_readonly("sdt_star", &JapoResult::sdt_star)
        .def_readonly("sdt_mean_field", &JapoResult::sdt_mean_field)
        .def_readonly("clamped_pairs", &JapoResult::clamped_pairs)
        .def_property_readonly("association_converged",
                               [](const JapoResult& r) { return r.association.converged; })
        .def_property_readonly("newton_converged",
                               [](const JapoResult& r) { return r.newton.converged; })
        .def_property_readonly("newton_at_bound",
                               [](const JapoResult& r) { return r.newton.at_bound; });
    m.def(
        "japo",
        [](const NetworkConfig& cfg, bool paper_theta) {
            return japo(cfg, model_from_flag(paper_theta));
        },
        py::arg("cfg"), py::arg("paper_theta") = false);

    py::enum_<Scheme>(m, "Scheme")
        .value("SSF", Scheme::kSsf)
        .value("FD_ASSOC_FIXED_PCS", Scheme::kFdAssocFixedPcs)
        .value("JAPO", Scheme::kJapo)
        .value("HD_JAPO", Scheme::kHdJapo);

    py::class_<RealizationRecord>(m, "RealizationRecord")
        .def_readonly("seed", &RealizationRecord::seed)
        .def_readonly("cap", &RealizationRecord::cap)
        .def_readonly("stp", &RealizationRecord::stp)
        .def_readonly("sdt", &RealizationRecord::sdt)
        .def_readonly("lambda_hat_s", &RealizationRecord::lambda_hat_s)
        .def_readonly("lambda_hat_a", &RealizationRecord::lambda_hat_a)
        .def_readonly("gamma_star", &RealizationRecord::gamma_star)
        .def_readonly("clamped_pairs", &RealizationRecord::clamped_pairs)
        .def_readonly("ok", &RealizationRecord::ok)
        .def_readonly("error", &RealizationRecord::error);
    m.def(
        "run_realization",
        [](const NetworkConfig& cfg, Scheme scheme, std::uint64_t seed, bool paper_theta,
           bool empirical) {
            HarnessOptions opt;
            opt.model = model_from_flag(paper_theta);
            opt.use_empirical_densities = empirical;
            return run_realization(cfg, scheme, seed, opt);
        },
        py::arg("cfg"), py::arg("scheme"), py::arg("seed"), py::arg("paper_theta") = false,
        py::arg("use_empirical_densities") = false);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("sweep_param", &ResultRow::sweep_param)
        .def_readonly("sweep_value", &ResultRow::sweep_value)
        .def_readonly("scheme", &ResultRow::scheme)
        .def_readonly("metric", &ResultRow::metric)
        .def_readonly("mean", &ResultRow::mean)
        .def_property_readonly("stderr",
                               [](const ResultRow& r) -> py::object {
                                   if (r.stderr_) return py::float_(*r.stderr_);
                                   return py::none();
                               })
        .def_readonly("n", &ResultRow::n);
    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("scenario", &ExperimentResult::scenario)
        .def_readonly("rows", &ExperimentResult::rows)
        .def_readonly("total_realizations", &ExperimentResult::total_realizations)
        .def_readonly("failed_realizations", &ExperimentResult::failed_realizations)
        .def_readonly("clamped_evaluations", &ExperimentResult::clamped_evaluations);
    m.def("scenario_names", &scenario_names);
    m.def(
        "run_scenario",
        [](const std::string& name, const NetworkConfig& base, bool fast, bool paper_theta,
           std::size_t n_realizations) {
            HarnessOptions opt;
            opt.model = model_from_flag(paper_theta);
            Scenario s = make_scenario(name, base, fast, opt);
            if (n_realizations > 0) s.n_realizations = n_realizations;
            return run_experiment(s);
        },
        py::arg("name"), py::arg("base"), py::arg("fast") = true, py::arg("paper_theta") = false,
        py::arg("n_realizations") = 0);
    m.def(
        "result_csv",
        [](const ExperimentResult& r) { return io::result_csv(r); }, py::arg("result"));
}
