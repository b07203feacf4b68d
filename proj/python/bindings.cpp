#include "sdr/sdr.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

py::dict trace_to_dict(const sdr::SdrTrace& tr) {
    py::list levels;
    for (const auto& lt : tr.levels) {
        py::dict d;
        d["dim"] = lt.dim;
        d["filtered_count"] = lt.filtered_count;
        d["filtered"] = lt.filtered;
        d["kept_dim"] = lt.kept_dim;
        d["eigenvalues"] = lt.eigenvalues;
        d["component"] = lt.component;
        d["component_norm"] = lt.component_norm;
        d["rough_gm_iterations"] = lt.rough_gm_iterations;
        levels.append(d);
    }
    py::dict out;
    out["schedule"] = tr.schedule.dims;
    out["threshold"] = tr.threshold;
    out["rate"] = tr.rate;
    out["tau"] = tr.tau;
    out["rank"] = tr.rank;
    out["scale"] = tr.scale;
    out["levels"] = levels;
    out["wall_ms"] = tr.wall_ms;
    return out;
}

sdr::ThresholdParams params(double eps_star, double n, double rank, double delta, double s, double c0,
                            double gamma) {
    sdr::ThresholdParams p;
    p.eps_star = eps_star;
    p.n = n;
    p.rank = rank;
    p.delta = delta;
    p.variance_proxy = s;
    p.c0 = c0;
    p.gamma = gamma;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Iterative spectral dimension reduction for robust mean estimation";

    auto base = py::register_exception<sdr::Error>(m, "SdrError", PyExc_RuntimeError);
    py::register_exception<sdr::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<sdr::DataError>(m, "DataError", base.ptr());
    py::register_exception<sdr::IoError>(m, "IoError", base.ptr());
    py::register_exception<sdr::FilterError>(m, "FilterError", base.ptr());

    // Linear algebra.
    m.def("sample_mean", &sdr::sample_mean, py::arg("points"));
    m.def(
        "sample_covariance",
        [](const sdr::DataSet& x, bool unbiased) { return sdr::sample_covariance(x, unbiased).matrix(); },
        py::arg("points"), py::arg("unbiased") = false);
    m.def(
        "sym_eigendecomposition",
        [](const sdr::Matrix& a) {
            auto es = sdr::sym_eigendecomposition(sdr::SymMatrix(a));
            return py::make_tuple(es.values, es.vectors);
        },
        py::arg("matrix"));
    m.def(
        "bottom_k_eigenvectors",
        [](const sdr::Matrix& a, Eigen::Index k) { return sdr::bottom_k_eigenvectors(sdr::SymMatrix(a), k); },
        py::arg("matrix"), py::arg("k"));
    m.def(
        "effective_rank", [](const sdr::Matrix& a) { return sdr::effective_rank(sdr::SymMatrix(a)); },
        py::arg("matrix"));
    m.def(
        "operator_norm", [](const sdr::Matrix& a) { return sdr::operator_norm(sdr::SymMatrix(a)); },
        py::arg("matrix"));

    // Medians.
    m.def(
        "geometric_median",
        [](const sdr::DataSet& x, int max_iter, double tol, double singularity_eps) {
            return sdr::geometric_median(x, {max_iter, tol, singularity_eps});
        },
        py::arg("points"), py::arg("max_iter") = 500, py::arg("tol") = 1e-8, py::arg("singularity_eps") = 1e-12);
    m.def(
        "univariate_median", [](const std::vector<double>& v) { return sdr::univariate_median(v); },
        py::arg("values"));

    // Schedule and thresholds.
    m.def("dimension_schedule", [](int p) { return sdr::dimension_schedule(p).dims; }, py::arg("p"));
    m.def("base_rate", &sdr::base_rate, py::arg("n"), py::arg("rank"), py::arg("delta"));
    m.def("tau", &sdr::tau, py::arg("bar_r"));
    m.def(
        "threshold_gaussian",
        [](double eps_star, double n, double rank, double delta) {
            return sdr::threshold_gaussian(params(eps_star, n, rank, delta, 1.0, std::sqrt(2.0), 0.0));
        },
        py::arg("eps_star"), py::arg("n"), py::arg("rank"), py::arg("delta"));
    m.def(
        "threshold_subgaussian",
        [](double eps_star, double n, double p, double delta, double s, double c0) {
            return sdr::threshold_subgaussian(params(eps_star, n, p, delta, s, c0, 0.0));
        },
        py::arg("eps_star"), py::arg("n"), py::arg("p"), py::arg("delta"), py::arg("variance_proxy") = 1.0,
        py::arg("c0") = std::sqrt(2.0));
    m.def(
        "threshold_approx_cov",
        [](double eps_star, double n, double rank, double delta, double gamma, double opnorm) {
            return sdr::threshold_approx_cov(params(eps_star, n, rank, delta, 1.0, std::sqrt(2.0), gamma), opnorm);
        },
        py::arg("eps_star"), py::arg("n"), py::arg("rank"), py::arg("delta"), py::arg("gamma"),
        py::arg("sigma_tilde_opnorm") = 1.0);

    // Estimators.
    py::enum_<sdr::CovarianceMode>(m, "CovarianceMode")
        .value("known", sdr::CovarianceMode::known)
        .value("approximate", sdr::CovarianceMode::approximate)
        .value("subgaussian", sdr::CovarianceMode::subgaussian);
    py::enum_<sdr::LastLevelRule>(m, "LastLevelRule")
        .value("median", sdr::LastLevelRule::median)
        .value("filtered_mean", sdr::LastLevelRule::filtered_mean);
    py::enum_<sdr::RankSource>(m, "RankSource")
        .value("effective_rank", sdr::RankSource::effective_rank)
        .value("dimension", sdr::RankSource::dimension);

    py::class_<sdr::SdrConfig>(m, "SdrConfig")
        .def(py::init<>())
        .def_readwrite("eps_star", &sdr::SdrConfig::eps_star)
        .def_readwrite("delta", &sdr::SdrConfig::delta)
        .def_readwrite("mode", &sdr::SdrConfig::mode)
        .def_readwrite("gamma", &sdr::SdrConfig::gamma)
        .def_readwrite("variance_proxy", &sdr::SdrConfig::variance_proxy)
        .def_readwrite("c0", &sdr::SdrConfig::c0)
        .def_readwrite("threshold_override", &sdr::SdrConfig::threshold_override)
        .def_readwrite("last_level", &sdr::SdrConfig::last_level)
        .def_readwrite("rank_source", &sdr::SdrConfig::rank_source)
        .def_property(
            "rough_gm_max_iter", [](const sdr::SdrConfig& c) { return c.rough_gm.max_iter; },
            [](sdr::SdrConfig& c, int v) { c.rough_gm.max_iter = v; })
        .def_property(
            "rough_gm_tol", [](const sdr::SdrConfig& c) { return c.rough_gm.tol; },
            [](sdr::SdrConfig& c, double v) { c.rough_gm.tol = v; });

    m.def(
        "sdr_estimate",
        [](const sdr::DataSet& x, const sdr::Matrix& sigma, const sdr::SdrConfig& cfg) {
            auto res = sdr::sdr_estimate(x, sdr::SymMatrix(sigma), cfg);
            return py::make_tuple(res.mean, trace_to_dict(res.trace));
        },
        py::arg("x"), py::arg("sigma"), py::arg("config") = sdr::SdrConfig{});
    m.def(
        "sdr_estimate_approx",
        [](const sdr::DataSet& x, const sdr::Matrix& sigma_tilde, double gamma, const sdr::SdrConfig& cfg) {
            auto res = sdr::sdr_estimate_approx(x, sdr::SymMatrix(sigma_tilde), gamma, cfg);
            return py::make_tuple(res.mean, trace_to_dict(res.trace));
        },
        py::arg("x"), py::arg("sigma_tilde"), py::arg("gamma"), py::arg("config") = sdr::SdrConfig{});
    m.def("coordinatewise_median", &sdr::coordinatewise_median, py::arg("x"));
    m.def("geometric_median_estimator", &sdr::geometric_median_estimator, py::arg("x"));
    m.def("oracle_mean", &sdr::oracle_mean, py::arg("x"), py::arg("inlier_mask"));

    // Synthetic data and sweeps.
    m.def(
        "generate_sample",
        [](std::size_t n, std::size_t p, const std::string& scheme, double eps, std::uint64_t seed,
           double shift_norm, double uniform_high) {
            sdr::ContaminationSpec spec;
            spec.scheme = sdr::parse_scheme(scheme);
            spec.eps = eps;
            spec.seed = seed;
            spec.shift_norm = shift_norm;
            spec.uniform_high = uniform_high;
            auto s = sdr::generate_sample(n, p, spec);
            return py::make_tuple(s.x, s.inlier_mask, s.true_mean);
        },
        py::arg("n"), py::arg("p"), py::arg("scheme"), py::arg("eps"), py::arg("seed") = 0,
        py::arg("shift_norm") = 15.0, py::arg("uniform_high") = 3.0);

    m.def(
        "run_experiment",
        [](const std::string& scheme, std::vector<std::size_t> n, std::vector<std::size_t> p,
           std::vector<double> eps, int trials, std::uint64_t seed, const std::string& estimators) {
            sdr::ExperimentSpec spec;
            spec.scheme.scheme = sdr::parse_scheme(scheme);
            spec.grid = {std::move(n), std::move(p), std::move(eps)};
            spec.trials = trials;
            spec.master_seed = seed;
            spec.estimators = sdr::parse_estimators(estimators);
            std::vector<sdr::ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = sdr::run_experiment(spec);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["scheme"] = std::string(sdr::to_string(r.scheme));
                d["n"] = r.n;
                d["p"] = r.p;
                d["eps"] = r.eps;
                d["trial"] = r.trial;
                d["seed"] = r.seed;
                d["estimator"] = std::string(sdr::to_string(r.estimator));
                d["l2_error"] = r.l2_error;
                d["runtime_ms"] = r.runtime_ms;
                out.append(d);
            }
            return out;
        },
        py::arg("scheme"), py::arg("n"), py::arg("p"), py::arg("eps"), py::arg("trials") = 50, py::arg("seed") = 0,
        py::arg("estimators") = "sdr,cm,gm,oracle");
}
