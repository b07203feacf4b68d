#pragma once

#include "sdr/contamination.hpp"
#include "sdr/estimator.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sdr {

enum class EstimatorKind { sdr, cm, gm, oracle };

std::string_view to_string(EstimatorKind k);
EstimatorKind parse_estimator(std::string_view name);
// Comma-separated list, e.g. "sdr,cm,gm,oracle".
std::vector<EstimatorKind> parse_estimators(std::string_view list);

struct ExperimentGrid {
    std::vector<std::size_t> n;
    std::vector<std::size_t> p;
    std::vector<double> eps;
};

struct ExperimentSpec {
    std::vector<EstimatorKind> estimators{EstimatorKind::sdr, EstimatorKind::cm, EstimatorKind::gm,
                                          EstimatorKind::oracle};
    // Scheme and its parameters; eps and seed are overwritten per cell.
    ContaminationSpec scheme;
    ExperimentGrid grid;
    int trials = 50;
    std::uint64_t master_seed = 0;
    SdrConfig sdr_cfg;
    // Run SDR with eps_star = eps for every cell with eps > 0; cells with
    // eps = 0 keep sdr_cfg.eps_star.
    bool eps_star_tracks_eps = true;
    std::string output_path;

    void validate() const;
};

struct ResultRow {
    Scheme scheme = Scheme::gmc;
    std::size_t n = 0;
    std::size_t p = 0;
    double eps = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    EstimatorKind estimator = EstimatorKind::sdr;
    double l2_error = 0.0;  // NaN when the estimator failed
    double runtime_ms = 0.0;
    std::string failure;    // not serialized
};

// Seed of one (n, p, trial) cell. eps does not enter, so a sweep over eps
// reuses the same clean sample and nests the outlier positions.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t p, int trial);

// Rows ordered by (n, p, eps) in grid order, then trial, then estimator in
// spec order. workers = 0 uses the hardware concurrency; the output does
// not depend on it.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned workers = 1);

inline constexpr std::string_view kResultHeader =
    "scheme,n,p,eps,trial,seed,estimator,l2_error,runtime_ms";

// With include_timing = false the runtime column is written as 0 so the
// file is byte-reproducible.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool include_timing = true);
void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       bool include_timing = true);

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

// Linear interpolation between order statistics (Hyndman-Fan type 7, the
// default of R's quantile()). prob in [0, 1]; DataError when empty.
double quantile_type7(std::vector<double> values, double prob);
Quartiles quartiles(const std::vector<double>& values);

struct SummaryRow {
    Scheme scheme = Scheme::gmc;
    std::size_t n = 0;
    std::size_t p = 0;
    double eps = 0.0;
    EstimatorKind estimator = EstimatorKind::sdr;
    std::size_t trials = 0;
    std::size_t failures = 0;
    Quartiles error;    // over the successful trials
    Quartiles runtime;
};

// One row per (cell, estimator), in order of first appearance. Failed
// trials are counted but excluded from the quartiles.
std::vector<SummaryRow> aggregate_quantiles(const std::vector<ResultRow>& rows);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Writes error_vs_<axis>.svg and runtime_vs_<axis>.svg for every axis among
// n, p, eps taking at least two values (n alone when none does). Returns the
// files written. DataError when no row has a finite median error.
std::vector<std::filesystem::path> emit_plots(const std::vector<SummaryRow>& summary,
                                              const std::filesystem::path& dir);

enum class PlotAxis { n, p, eps };
enum class PlotMetric { error, runtime };

// The SVG text of one chart; deterministic given its input.
std::string render_chart(const std::vector<SummaryRow>& summary, PlotAxis axis, PlotMetric metric);

}  // namespace sdr
