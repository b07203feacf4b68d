#include "sdr/bench.hpp"

#include "sdr/baselines.hpp"
#include "sdr/error.hpp"
#include "sdr/io.hpp"
#include "sdr/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace sdr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
    std::size_t n;
    std::size_t p;
    double eps;
};

Vector run_estimator(EstimatorKind kind, const LabeledSample& s, const SdrConfig& cfg) {
    switch (kind) {
        case EstimatorKind::sdr:
            return sdr_estimate(s.x, SymMatrix::identity(s.x.cols()), cfg).mean;
        case EstimatorKind::cm: return coordinatewise_median(s.x);
        case EstimatorKind::gm: return geometric_median_estimator(s.x);
        case EstimatorKind::oracle: return oracle_mean(s.x, s.inlier_mask);
    }
    throw InvalidArgument("unknown estimator");
}

void run_trial(const ExperimentSpec& spec, const Cell& cell, int trial, ResultRow* out) {
    ContaminationSpec cs = spec.scheme;
    cs.eps = cell.eps;
    cs.seed = trial_seed(spec.master_seed, cell.n, cell.p, trial);

    SdrConfig cfg = spec.sdr_cfg;
    if (spec.eps_star_tracks_eps && cell.eps > 0.0) cfg.eps_star = cell.eps;

    std::string sample_failure;
    LabeledSample sample;
    try {
        sample = generate_sample(cell.n, cell.p, cs);
    } catch (const Error& e) {
        sample_failure = e.what();
    }

    for (std::size_t k = 0; k < spec.estimators.size(); ++k) {
        ResultRow& row = out[k];
        row.scheme = cs.scheme;
        row.n = cell.n;
        row.p = cell.p;
        row.eps = cell.eps;
        row.trial = trial;
        row.seed = cs.seed;
        row.estimator = spec.estimators[k];
        if (!sample_failure.empty()) {
            row.l2_error = kNaN;
            row.failure = sample_failure;
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
            const Vector est = run_estimator(row.estimator, sample, cfg);
            row.l2_error = (est - sample.true_mean).norm();
        } catch (const Error& e) {
            row.l2_error = kNaN;
            row.failure = e.what();
        }
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
}

}  // namespace

std::string_view to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::sdr: return "sdr";
        case EstimatorKind::cm: return "cm";
        case EstimatorKind::gm: return "gm";
        case EstimatorKind::oracle: return "oracle";
    }
    return "unknown";
}

EstimatorKind parse_estimator(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "sdr") return EstimatorKind::sdr;
    if (lower == "cm") return EstimatorKind::cm;
    if (lower == "gm") return EstimatorKind::gm;
    if (lower == "oracle") return EstimatorKind::oracle;
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

std::vector<EstimatorKind> parse_estimators(std::string_view list) {
    std::vector<EstimatorKind> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const auto item = list.substr(start, comma - start);
        if (!item.empty()) out.push_back(parse_estimator(item));
        start = comma + 1;
    }
    if (out.empty()) throw InvalidArgument("empty estimator list");
    return out;
}

void ExperimentSpec::validate() const {
    if (estimators.empty()) throw InvalidArgument("no estimators selected");
    if (grid.n.empty() || grid.p.empty() || grid.eps.empty()) throw InvalidArgument("empty grid");
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    for (std::size_t n : grid.n)
        if (n < 2) throw InvalidArgument("grid n values must be >= 2");
    for (std::size_t p : grid.p)
        if (p < 1) throw InvalidArgument("grid p values must be >= 1");
    for (double e : grid.eps)
        if (!(e >= 0.0 && e < 0.5)) throw InvalidArgument("grid eps values must lie in [0, 1/2)");
    sdr_cfg.validate();
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t p, int trial) {
    return derive_seed(master_seed, {std::uint64_t(n), std::uint64_t(p), std::uint64_t(trial)});
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned workers) {
    spec.validate();
    std::vector<Cell> cells;
    for (std::size_t n : spec.grid.n)
        for (std::size_t p : spec.grid.p)
            for (double e : spec.grid.eps) cells.push_back({n, p, e});

    const std::size_t per_trial = spec.estimators.size();
    const std::size_t tasks = cells.size() * static_cast<std::size_t>(spec.trials);
    std::vector<ResultRow> rows(tasks * per_trial);

    // Every task writes its own slice, so the row order is fixed up front.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            const Cell& cell = cells[t / static_cast<std::size_t>(spec.trials)];
            const int trial = static_cast<int>(t % static_cast<std::size_t>(spec.trials));
            run_trial(spec, cell, trial, rows.data() + t * per_trial);
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool include_timing) {
    out << kResultHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << r.n << ',' << r.p << ',' << format_double(r.eps) << ','
            << r.trial << ',' << r.seed << ',' << to_string(r.estimator) << ',' << format_double(r.l2_error)
            << ',' << format_double(include_timing ? r.runtime_ms : 0.0) << '\n';
    }
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       bool include_timing) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    write_results_csv(out, rows, include_timing);
    if (!out) throw IoError("error while writing " + path.string());
}

double quantile_type7(std::vector<double> values, double prob) {
    if (values.empty()) throw DataError("empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw InvalidArgument("probability must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = (double(values.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - double(lo)) * (values[hi] - values[lo]);
}

Quartiles quartiles(const std::vector<double>& values) {
    return {quantile_type7(values, 0.25), quantile_type7(values, 0.5), quantile_type7(values, 0.75)};
}

std::vector<SummaryRow> aggregate_quantiles(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw DataError("no result rows to aggregate");
    using Key = std::tuple<int, std::size_t, std::size_t, std::uint64_t, int>;
    std::map<Key, std::size_t> index;
    std::vector<SummaryRow> out;
    std::vector<std::vector<double>> errors, times;

    for (const auto& r : rows) {
        const Key key{int(r.scheme), r.n, r.p, std::bit_cast<std::uint64_t>(r.eps), int(r.estimator)};
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted) {
            SummaryRow s;
            s.scheme = r.scheme;
            s.n = r.n;
            s.p = r.p;
            s.eps = r.eps;
            s.estimator = r.estimator;
            out.push_back(s);
            errors.emplace_back();
            times.emplace_back();
        }
        SummaryRow& s = out[it->second];
        ++s.trials;
        if (std::isnan(r.l2_error)) {
            ++s.failures;
            continue;
        }
        errors[it->second].push_back(r.l2_error);
        times[it->second].push_back(r.runtime_ms);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (errors[i].empty()) {
            out[i].error = {kNaN, kNaN, kNaN};
            out[i].runtime = {kNaN, kNaN, kNaN};
            continue;
        }
        out[i].error = quartiles(errors[i]);
        out[i].runtime = quartiles(times[i]);
    }
    return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "scheme,n,p,eps,estimator,trials,failures,error_q1,error_median,error_q3,"
           "runtime_q1,runtime_median,runtime_q3\n";
    for (const auto& s : rows) {
        out << to_string(s.scheme) << ',' << s.n << ',' << s.p << ',' << format_double(s.eps) << ','
            << to_string(s.estimator) << ',' << s.trials << ',' << s.failures << ','
            << format_double(s.error.q1) << ',' << format_double(s.error.median) << ','
            << format_double(s.error.q3) << ',' << format_double(s.runtime.q1) << ','
            << format_double(s.runtime.median) << ',' << format_double(s.runtime.q3) << '\n';
    }
}

}  // namespace sdr
