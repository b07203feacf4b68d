#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sdr {

// p_0 = p > p_1 > ... > p_L = 1 with p_l = s(p_{l-1} / e) + 1, where s(x)
// is the largest integer strictly smaller than x. Consecutive ratios stay
// below e, which minimizes sum_l p_{l-1}/p_l.
struct DimensionSchedule {
    std::vector<int> dims;

    std::size_t levels() const noexcept { return dims.empty() ? 0 : dims.size() - 1; }
};

DimensionSchedule dimension_schedule(int p);

// sum_{l=1}^{L} p_{l-1} / p_l, the quantity the schedule minimizes.
double schedule_cost(const DimensionSchedule& s);

// Inputs shared by the threshold formulas. `rank` is r_Sigma (known
// covariance), p (explicit-constant and sub-Gaussian variants) or
// r_{Sigma~} (approximate covariance), chosen by the caller.
struct ThresholdParams {
    double eps_star = 0.1;
    double delta = 0.1;
    double n = 1;
    double rank = 1;
    double variance_proxy = 1.0;
    double c0 = std::sqrt(2.0);
    double gamma = 0.0;

    // Throws InvalidArgument when a field leaves its range.
    void validate() const;
};

// (sqrt(rank) + sqrt(2 log(2/delta))) / sqrt(n)
double base_rate(double n, double rank, double delta);

// min(1/4, r / sqrt(log+(2/r))); the second branch is +inf when r >= 2.
double tau(double bar_r);

double threshold_gaussian(const ThresholdParams& p);

// 3 sqrt(s) (sqrt(p) + 2 sqrt(log(2/delta))) / sqrt(n)
double subgaussian_rate(double n, double dim, double delta, double variance_proxy);

double threshold_subgaussian(const ThresholdParams& p);

// (1 + gamma) / (1 - gamma)
double covariance_inflation(double gamma);

// (sqrt(C_gamma rank) + sqrt(2 log(2/delta))) / sqrt(n)
double approx_rate(double n, double rank, double delta, double gamma);

// Threshold for an approximate covariance with relative error gamma in
// (0, 1/2]. With `sqrt_opnorm` the leading ||Sigma~||_op factor is
// replaced by its square root.
double threshold_approx_cov(const ThresholdParams& p, double sigma_tilde_opnorm,
                            bool sqrt_opnorm = false);

}  // namespace sdr
