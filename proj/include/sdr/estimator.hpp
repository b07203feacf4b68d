#pragma once

#include "sdr/geometric_median.hpp"
#include "sdr/schedule.hpp"
#include "sdr/spectral.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace sdr {

enum class CovarianceMode {
    known,        // Sigma is the true covariance, Gaussian inliers
    approximate,  // Sigma~ with ||Sigma^{-1/2} Sigma~ Sigma^{-1/2} - I||_op <= gamma
    subgaussian,  // true Sigma, sub-Gaussian inliers with a variance proxy
};

enum class LastLevelRule {
    median,         // median of the one-dimensional projections
    filtered_mean,  // mean of the filtered projections
};

enum class RankSource { effective_rank, dimension };

struct SdrConfig {
    double eps_star = 0.1;
    double delta = 0.1;
    CovarianceMode mode = CovarianceMode::known;
    double gamma = 0.0;           // approximate mode only
    double variance_proxy = 1.0;  // sub-Gaussian mode only
    double c0 = std::sqrt(2.0);   // sub-Gaussian mode only
    // Replaces the computed threshold; expressed for data normalized to
    // ||Sigma||_op = 1.
    std::optional<double> threshold_override;
    WeiszfeldConfig rough_gm = WeiszfeldConfig::rough();
    LastLevelRule last_level = LastLevelRule::median;
    RankSource rank_source = RankSource::effective_rank;
    bool unbiased_covariance = false;
    bool approx_sqrt_opnorm = false;
    // Record every basis V_l and kept block U_l in the trace.
    bool keep_bases = false;

    void validate() const;
};

struct LevelTrace {
    int dim = 0;                    // p_l
    std::size_t filtered_count = 0; // |S^(l)|
    bool filtered = true;           // false when the level used no filter
    int kept_dim = 0;               // p_l - p_{l+1} (1 at the last level)
    Vector eigenvalues;             // the kept smallest eigenvalues, ascending
    Vector component;               // mu^(l) in the caller's units
    double component_norm = 0.0;
    int rough_gm_iterations = 0;
};

struct SdrTrace {
    DimensionSchedule schedule;
    double threshold = 0.0;  // in normalized units
    double rate = 0.0;       // bar r_n (or its variant for the mode)
    double tau = 0.0;
    double rank = 0.0;
    double scale = 1.0;      // ||Sigma||_op used for normalization
    std::vector<LevelTrace> levels;
    double wall_ms = 0.0;
    // Filled only with SdrConfig::keep_bases. bases[l] is V_l (p x p_l),
    // kept[l] is U_l (k x p_l, rows are eigenvectors).
    std::vector<Matrix> bases;
    std::vector<Matrix> kept;
};

struct SdrResult {
    Vector mean;
    SdrTrace trace;
};

struct ThresholdInfo {
    double threshold = 0.0;
    double rate = 0.0;
    double tau = 0.0;
    double rank = 0.0;
};

// Threshold in normalized units for n points of dimension p. `rank` is the
// value implied by cfg.rank_source (ignored in sub-Gaussian mode, which
// always uses p).
ThresholdInfo sdr_threshold(const SdrConfig& cfg, Eigen::Index n, Eigen::Index p, double rank);

// Indices i with ||projected_i - center|| <= radius, ascending.
std::vector<Eigen::Index> filter_indices(const DataSet& projected, const Vector& center,
                                         double radius);

// Iterative spectral dimension reduction. sigma is the covariance (or its
// approximation in approximate mode). Data and sigma are rescaled so that
// ||sigma||_op = 1 before the levels run and the result is mapped back.
SdrResult sdr_estimate(const DataSet& x, const SymMatrix& sigma, const SdrConfig& cfg);

// sdr_estimate in approximate-covariance mode with the given gamma.
SdrResult sdr_estimate_approx(const DataSet& x, const SymMatrix& sigma_tilde, double gamma,
                              SdrConfig cfg);

std::string_view to_string(CovarianceMode m);
std::string_view to_string(LastLevelRule r);

}  // namespace sdr
