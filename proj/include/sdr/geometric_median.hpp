#pragma once

#include "sdr/spectral.hpp"

#include <span>
#include <vector>

namespace sdr {

// Stopping rules for the Weiszfeld iteration. tol is an absolute bound on
// the step length, in the units of the data.
struct WeiszfeldConfig {
    int max_iter = 500;
    double tol = 1e-8;
    double singularity_eps = 1e-12;

    // The cheap location estimate used inside the SDR filter: at most 15
    // steps, stop once a step is shorter than 1 (data normalized to
    // ||Sigma||_op = 1).
    static WeiszfeldConfig rough() { return {15, 1.0, 1e-12}; }

    // Full accuracy profile scaled to the bounding-box diagonal of the data.
    static WeiszfeldConfig full_accuracy(const DataSet& points);

    void validate() const;
};

struct WeiszfeldResult {
    Vector median;
    int iterations = 0;
    bool converged = false;
    // Objective sum_i ||x_i - m_k|| at the start point and after every
    // accepted step; non-increasing by construction.
    std::vector<double> objective;
};

// Weiszfeld iteration started at the coordinatewise median. Distances are
// clamped below at singularity_eps so an iterate sitting on a data point
// gives that point a large but finite weight; at the accuracies used here
// this behaves like the Vardi-Zhang modification without its bookkeeping.
// A step that would increase the objective is rejected and ends the run.
WeiszfeldResult weiszfeld(const DataSet& points, const WeiszfeldConfig& cfg);

Vector geometric_median(const DataSet& points, const WeiszfeldConfig& cfg);

// Lower median: element ceil(n/2) (1-based) of the sorted values.
double univariate_median(std::span<const double> values);

// Midpoint median: mean of the two central order statistics for even n.
double midpoint_median(std::span<const double> values);

Vector coordinatewise_lower_median(const DataSet& points);

}  // namespace sdr
