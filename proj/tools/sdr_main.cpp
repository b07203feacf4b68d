// Command-line front end: single-shot estimation, simulation sweeps and the
// dimension schedule / threshold calculator.
//
// Exit codes: 0 success, 2 bad arguments, 3 data error, 4 estimator failure.

#include "sdr/sdr.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kBadArgs = 2, kDataError = 3, kEstimatorFailure = 4 };

struct EstimateArgs {
    std::string input;
    std::string sigma;
    std::string sigma_approx;
    double gamma = 0.0;
    std::optional<double> subgaussian;
    double c0 = std::sqrt(2.0);
    double eps_star = 0.1;
    double delta = 0.1;
    std::optional<double> threshold;
    std::string last_level = "median";
    std::string rank_source = "effective-rank";
    bool trace = false;
};

struct BenchArgs {
    std::string scheme;
    std::vector<std::size_t> n;
    std::vector<std::size_t> p;
    std::vector<double> eps;
    int trials = 50;
    std::uint64_t seed = 0;
    std::string estimators = "sdr,cm,gm,oracle";
    std::string out;
    std::string plots;
    std::string summary;
    double delta = 0.1;
    double eps_star = 0.1;
    double shift_norm = 15.0;
    double uniform_high = 3.0;
    std::string last_level = "median";
    unsigned workers = 1;
    bool no_timing = false;
};

struct ScheduleArgs {
    int p = 0;
    std::optional<double> n;
    std::optional<double> delta;
    std::optional<double> eps_star;
    std::optional<double> rank;
};

sdr::LastLevelRule parse_last_level(const std::string& s) {
    if (s == "median") return sdr::LastLevelRule::median;
    if (s == "filtered-mean") return sdr::LastLevelRule::filtered_mean;
    throw sdr::InvalidArgument("--last-level must be median or filtered-mean");
}

void print_vector(const sdr::Vector& v, const std::string& sep) {
    for (Eigen::Index i = 0; i < v.size(); ++i) std::cout << (i ? sep : "") << sdr::format_double(v(i));
}

void print_trace(const sdr::SdrTrace& tr) {
    std::cout << "threshold=" << sdr::format_double(tr.threshold) << '\n'
              << "rate=" << sdr::format_double(tr.rate) << '\n'
              << "tau=" << sdr::format_double(tr.tau) << '\n'
              << "rank=" << sdr::format_double(tr.rank) << '\n'
              << "scale=" << sdr::format_double(tr.scale) << '\n'
              << "schedule=";
    for (std::size_t i = 0; i < tr.schedule.dims.size(); ++i) std::cout << (i ? " " : "") << tr.schedule.dims[i];
    std::cout << '\n' << "levels=" << tr.schedule.levels() << '\n';
    for (std::size_t l = 0; l < tr.levels.size(); ++l) {
        const auto& lt = tr.levels[l];
        const std::string k = "level." + std::to_string(l) + ".";
        std::cout << k << "dim=" << lt.dim << '\n'
                  << k << "filtered_count=" << lt.filtered_count << '\n'
                  << k << "filtered=" << (lt.filtered ? "true" : "false") << '\n'
                  << k << "kept_dim=" << lt.kept_dim << '\n'
                  << k << "eigenvalues=";
        print_vector(lt.eigenvalues, " ");
        std::cout << '\n'
                  << k << "component_norm=" << sdr::format_double(lt.component_norm) << '\n'
                  << k << "rough_gm_iterations=" << lt.rough_gm_iterations << '\n';
    }
    std::cout << "wall_ms=" << sdr::format_double(tr.wall_ms) << '\n';
}

int run_estimate(const EstimateArgs& a) {
    sdr::SdrConfig cfg;
    cfg.eps_star = a.eps_star;
    cfg.delta = a.delta;
    cfg.threshold_override = a.threshold;
    cfg.last_level = parse_last_level(a.last_level);
    if (a.rank_source == "dimension")
        cfg.rank_source = sdr::RankSource::dimension;
    else if (a.rank_source != "effective-rank")
        throw sdr::InvalidArgument("--rank-source must be effective-rank or dimension");
    if (a.subgaussian) {
        cfg.mode = sdr::CovarianceMode::subgaussian;
        cfg.variance_proxy = *a.subgaussian;
        cfg.c0 = a.c0;
    }
    if (!a.sigma_approx.empty()) {
        cfg.mode = sdr::CovarianceMode::approximate;
        cfg.gamma = a.gamma;
    }
    cfg.validate();

    sdr::DataSet x;
    sdr::SymMatrix sigma;
    try {
        x = sdr::read_matrix(a.input);
        const std::string& sigma_file = a.sigma_approx.empty() ? a.sigma : a.sigma_approx;
        if (sigma_file.empty()) {
            sigma = sdr::SymMatrix::identity(x.cols());
        } else {
            const sdr::Matrix m = sdr::read_matrix(sigma_file);
            if (m.rows() != m.cols()) throw sdr::DataError(sigma_file + ": covariance must be square");
            sigma = sdr::SymMatrix(m);
        }
    } catch (const sdr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }

    sdr::SdrResult res;
    try {
        res = sdr::sdr_estimate(x, sigma, cfg);
    } catch (const sdr::FilterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kEstimatorFailure;
    } catch (const sdr::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const sdr::InvalidArgument&) {
        throw;
    } catch (const sdr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kEstimatorFailure;
    }
    print_vector(res.mean, "\n");
    std::cout << '\n';
    if (a.trace) print_trace(res.trace);
    return kOk;
}

int run_bench(const BenchArgs& a) {
    sdr::ExperimentSpec spec;
    spec.scheme.scheme = sdr::parse_scheme(a.scheme);
    spec.scheme.shift_norm = a.shift_norm;
    spec.scheme.uniform_high = a.uniform_high;
    spec.estimators = sdr::parse_estimators(a.estimators);
    spec.grid = {a.n, a.p, a.eps};
    spec.trials = a.trials;
    spec.master_seed = a.seed;
    spec.sdr_cfg.delta = a.delta;
    spec.sdr_cfg.eps_star = a.eps_star;
    spec.sdr_cfg.last_level = parse_last_level(a.last_level);
    spec.output_path = a.out;
    spec.validate();

    auto rows = sdr::run_experiment(spec, a.workers);
    if (a.no_timing)
        for (auto& r : rows) r.runtime_ms = 0.0;
    try {
        sdr::write_results_csv(a.out, rows, !a.no_timing);
        const auto summary = sdr::aggregate_quantiles(rows);
        if (!a.summary.empty()) {
            std::ofstream out(a.summary, std::ios::binary);
            if (!out) throw sdr::IoError("cannot write " + a.summary);
            sdr::write_summary_csv(out, summary);
        }
        if (!a.plots.empty())
            for (const auto& path : sdr::emit_plots(summary, a.plots)) std::cerr << "wrote " << path.string() << '\n';
        sdr::write_summary_csv(std::cout, summary);
    } catch (const sdr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}

int run_schedule(const ScheduleArgs& a) {
    const auto sched = sdr::dimension_schedule(a.p);
    std::cout << "schedule=";
    for (std::size_t i = 0; i < sched.dims.size(); ++i) std::cout << (i ? " " : "") << sched.dims[i];
    std::cout << '\n' << "levels=" << sched.levels() << '\n'
              << "cost=" << sdr::format_double(sdr::schedule_cost(sched)) << '\n';

    const int given = int(bool(a.n)) + int(bool(a.delta)) + int(bool(a.eps_star));
    if (given == 0) return kOk;
    if (given != 3) throw sdr::InvalidArgument("--n, --delta and --eps-star must be given together");

    sdr::ThresholdParams params;
    params.n = *a.n;
    params.delta = *a.delta;
    params.eps_star = *a.eps_star;
    params.rank = a.rank.value_or(double(a.p));
    const double r = sdr::base_rate(params.n, params.rank, params.delta);
    const double t = sdr::threshold_gaussian(params);
    std::cout << "bar_r_n=" << sdr::format_double(r) << '\n'
              << "tau=" << sdr::format_double(sdr::tau(r)) << '\n'
              << "t=" << sdr::format_double(t) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust mean estimation by iterative spectral dimension reduction"};
    app.require_subcommand(1);
    // Options in the file go under [estimate] or [bench] sections.
    app.set_config("--config", "", "INI/TOML file with option defaults, one section per subcommand");
    app.fallthrough();

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "estimate the mean of a contaminated sample");
    estimate->add_option("--input", est.input, "data matrix, one observation per row")->required();
    auto* sigma_opt = estimate->add_option("--sigma", est.sigma, "known covariance matrix (default identity)");
    auto* approx_opt = estimate->add_option("--sigma-approx", est.sigma_approx, "approximate covariance matrix");
    auto* gamma_opt = estimate->add_option("--gamma", est.gamma, "relative error of --sigma-approx, in (0, 1/2]");
    auto* subg_opt = estimate->add_option("--subgaussian", est.subgaussian, "variance proxy of sub-Gaussian inliers");
    estimate->add_option("--c0", est.c0, "constant of the sub-Gaussian threshold")->needs(subg_opt);
    estimate->add_option("--eps-star", est.eps_star, "upper bound on the contamination rate")->required();
    estimate->add_option("--delta", est.delta, "failure probability")->required();
    estimate->add_option("--threshold", est.threshold, "override the filtering threshold (normalized units)");
    estimate->add_option("--last-level", est.last_level, "median | filtered-mean")
        ->check(CLI::IsMember({"median", "filtered-mean"}));
    estimate->add_option("--rank-source", est.rank_source, "effective-rank | dimension")
        ->check(CLI::IsMember({"effective-rank", "dimension"}));
    estimate->add_flag("--trace", est.trace, "print per-level diagnostics as key=value lines");
    sigma_opt->excludes(approx_opt);
    approx_opt->needs(gamma_opt);
    gamma_opt->needs(approx_opt);
    approx_opt->excludes(subg_opt);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Monte-Carlo sweep over contaminated Gaussian samples");
    bench->add_option("--scheme", bench_args.scheme, "cuo | gmc | cse")
        ->required()
        ->check(CLI::IsMember({"cuo", "gmc", "cse"}, CLI::ignore_case));
    bench->add_option("--n", bench_args.n, "sample sizes")->required()->delimiter(',');
    bench->add_option("--p", bench_args.p, "dimensions")->required()->delimiter(',');
    bench->add_option("--eps", bench_args.eps, "contamination rates")->required()->delimiter(',');
    bench->add_option("--trials", bench_args.trials, "trials per grid cell")->capture_default_str();
    bench->add_option("--seed", bench_args.seed, "master seed")->capture_default_str();
    bench->add_option("--estimators", bench_args.estimators, "comma-separated subset of sdr,cm,gm,oracle")
        ->capture_default_str();
    bench->add_option("--out", bench_args.out, "result CSV")->required();
    bench->add_option("--plots", bench_args.plots, "directory for SVG charts");
    bench->add_option("--summary", bench_args.summary, "quartile summary CSV");
    bench->add_option("--delta", bench_args.delta, "failure probability")->capture_default_str();
    bench->add_option("--eps-star", bench_args.eps_star, "eps_star for cells with eps = 0")->capture_default_str();
    bench->add_option("--shift-norm", bench_args.shift_norm, "GMC outlier mean norm")->capture_default_str();
    bench->add_option("--uniform-high", bench_args.uniform_high, "CUO outlier mean range")->capture_default_str();
    bench->add_option("--last-level", bench_args.last_level, "median | filtered-mean")
        ->check(CLI::IsMember({"median", "filtered-mean"}));
    bench->add_option("--workers", bench_args.workers, "worker threads (0 = all cores)")->capture_default_str();
    bench->add_flag("--no-timing", bench_args.no_timing, "write runtime_ms as 0 for byte-reproducible output");

    ScheduleArgs sched;
    auto* schedule = app.add_subcommand("schedule", "print the dimension schedule and thresholds");
    schedule->add_option("--p", sched.p, "dimension")->required()->check(CLI::PositiveNumber);
    schedule->add_option("--n", sched.n, "sample size");
    schedule->add_option("--delta", sched.delta, "failure probability");
    schedule->add_option("--eps-star", sched.eps_star, "upper bound on the contamination rate");
    schedule->add_option("--rank", sched.rank, "effective rank (default p)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        if (estimate->parsed()) return run_estimate(est);
        if (bench->parsed()) return run_bench(bench_args);
        return run_schedule(sched);
    } catch (const sdr::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArgs;
    } catch (const sdr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
}
