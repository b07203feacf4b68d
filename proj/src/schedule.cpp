#include "sdr/schedule.hpp"

#include "sdr/error.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace sdr {

namespace {

// Largest integer strictly smaller than x.
long strict_floor(double x) { return static_cast<long>(std::ceil(x)) - 1; }

double eps_factor(double eps_star) { return (3.0 - 2.0 * eps_star) / (1.0 - 2.0 * eps_star); }

}  // namespace

DimensionSchedule dimension_schedule(int p) {
    if (p < 1) throw InvalidArgument("dimension must be >= 1");
    DimensionSchedule s;
    s.dims.push_back(p);
    while (s.dims.back() > 1) {
        const double x = s.dims.back() / std::numbers::e;
        s.dims.push_back(static_cast<int>(strict_floor(x) + 1));
    }
    return s;
}

double schedule_cost(const DimensionSchedule& s) {
    double f = 0.0;
    for (std::size_t l = 1; l < s.dims.size(); ++l) f += double(s.dims[l - 1]) / s.dims[l];
    return f;
}

void ThresholdParams::validate() const {
    if (!(eps_star > 0.0 && eps_star < 0.5)) throw InvalidArgument("eps_star must lie in (0, 1/2)");
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
    if (!(n >= 1.0)) throw InvalidArgument("n must be >= 1");
    if (!(rank >= 1.0)) throw InvalidArgument("rank must be >= 1");
    if (!(variance_proxy > 0.0)) throw InvalidArgument("variance proxy must be > 0");
    if (!(c0 > 0.0)) throw InvalidArgument("c0 must be > 0");
    if (!(gamma >= 0.0 && gamma <= 0.5)) throw InvalidArgument("gamma must lie in [0, 1/2]");
}

double base_rate(double n, double rank, double delta) {
    return (std::sqrt(rank) + std::sqrt(2.0 * std::log(2.0 / delta))) / std::sqrt(n);
}

double tau(double bar_r) {
    const double lp = std::max(0.0, std::log(2.0 / bar_r));
    if (lp == 0.0) return 0.25;
    return std::min(0.25, bar_r / std::sqrt(lp));
}

double threshold_gaussian(const ThresholdParams& p) {
    p.validate();
    const double r = base_rate(p.n, p.rank, p.delta);
    const double t = tau(r);
    return eps_factor(p.eps_star) * (1.0 + r / std::sqrt(t)) + std::sqrt(2.0 + 2.0 * std::log(1.0 / t));
}

double subgaussian_rate(double n, double dim, double delta, double variance_proxy) {
    return 3.0 * std::sqrt(variance_proxy) *
           (std::sqrt(dim) + 2.0 * std::sqrt(std::log(2.0 / delta))) / std::sqrt(n);
}

double threshold_subgaussian(const ThresholdParams& p) {
    p.validate();
    const double s = p.variance_proxy;
    const double r = subgaussian_rate(p.n, p.rank, p.delta, s);
    const double t = tau(r);
    return eps_factor(p.eps_star) * (1.0 + p.c0 * r * std::sqrt(s / t)) +
           p.c0 * s * std::sqrt(2.0 + 2.0 * std::log(1.0 / t));
}

double covariance_inflation(double gamma) { return (1.0 + gamma) / (1.0 - gamma); }

double approx_rate(double n, double rank, double delta, double gamma) {
    return (std::sqrt(covariance_inflation(gamma) * rank) + std::sqrt(2.0 * std::log(2.0 / delta))) /
           std::sqrt(n);
}

double threshold_approx_cov(const ThresholdParams& p, double sigma_tilde_opnorm, bool sqrt_opnorm) {
    if (!(p.gamma > 0.0 && p.gamma <= 0.5)) throw InvalidArgument("gamma must lie in (0, 1/2]");
    if (!(sigma_tilde_opnorm > 0.0)) throw InvalidArgument("||Sigma~||_op must be > 0");
    p.validate();
    const double r = approx_rate(p.n, p.rank, p.delta, p.gamma);
    const double t = tau(r);
    const double scale = sqrt_opnorm ? std::sqrt(sigma_tilde_opnorm) : sigma_tilde_opnorm;
    return scale / (1.0 - p.gamma) *
           (eps_factor(p.eps_star) * (1.0 + r / std::sqrt(t)) + std::sqrt(2.0 + std::log(2.0 / t)));
}

}  // namespace sdr
