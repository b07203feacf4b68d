#include "sdr/estimator.hpp"

#include "sdr/error.hpp"

#include <chrono>
#include <cmath>

namespace sdr {

namespace {

struct Spectrum {
    double min = 0.0;
    double max = 0.0;
    double opnorm() const { return std::max(std::abs(min), std::abs(max)); }
};

Spectrum spectrum(const SymMatrix& m) {
    if (!m.all_finite()) throw DataError("non-finite matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DataError("eigendecomposition did not converge");
    const Vector& v = solver.eigenvalues();
    return {v(0), v(v.size() - 1)};
}

std::vector<double> column_values(const DataSet& y) {
    return std::vector<double>(y.col(0).data(), y.col(0).data() + y.rows());
}

}  // namespace

void SdrConfig::validate() const {
    if (!(eps_star > 0.0 && eps_star < 0.5)) throw InvalidArgument("eps_star must lie in (0, 1/2)");
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
    if (mode == CovarianceMode::approximate && !(gamma > 0.0 && gamma <= 0.5))
        throw InvalidArgument("gamma must lie in (0, 1/2]");
    if (mode == CovarianceMode::subgaussian) {
        if (!(variance_proxy > 0.0)) throw InvalidArgument("variance proxy must be > 0");
        if (!(c0 > 0.0)) throw InvalidArgument("c0 must be > 0");
    }
    if (threshold_override && !(*threshold_override > 0.0 && std::isfinite(*threshold_override)))
        throw InvalidArgument("threshold override must be finite and > 0");
    rough_gm.validate();
}

ThresholdInfo sdr_threshold(const SdrConfig& cfg, Eigen::Index n, Eigen::Index p, double rank) {
    cfg.validate();
    ThresholdParams params;
    params.eps_star = cfg.eps_star;
    params.delta = cfg.delta;
    params.n = double(n);
    params.rank = rank;
    params.variance_proxy = cfg.variance_proxy;
    params.c0 = cfg.c0;
    params.gamma = cfg.mode == CovarianceMode::approximate ? cfg.gamma : 0.0;

    ThresholdInfo info;
    switch (cfg.mode) {
        case CovarianceMode::known:
            info.rate = base_rate(params.n, rank, cfg.delta);
            info.threshold = threshold_gaussian(params);
            break;
        case CovarianceMode::approximate:
            info.rate = approx_rate(params.n, rank, cfg.delta, cfg.gamma);
            // Data are normalized to ||Sigma~||_op = 1 before filtering.
            info.threshold = threshold_approx_cov(params, 1.0, cfg.approx_sqrt_opnorm);
            break;
        case CovarianceMode::subgaussian:
            params.rank = double(p);
            info.rate = subgaussian_rate(params.n, params.rank, cfg.delta, cfg.variance_proxy);
            info.threshold = threshold_subgaussian(params);
            break;
    }
    info.rank = params.rank;
    info.tau = tau(info.rate);
    if (cfg.threshold_override) info.threshold = *cfg.threshold_override;
    return info;
}

std::vector<Eigen::Index> filter_indices(const DataSet& projected, const Vector& center,
                                         double radius) {
    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(projected.rows()));
    for (Eigen::Index i = 0; i < projected.rows(); ++i)
        if ((projected.row(i).transpose() - center).norm() <= radius) keep.push_back(i);
    return keep;
}

SdrResult sdr_estimate(const DataSet& x, const SymMatrix& sigma, const SdrConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (n < 2) throw DataError("at least two observations are required");
    if (p < 1) throw DataError("empty sample");
    if (!x.allFinite()) throw DataError("non-finite sample");
    if (sigma.dim() != p) throw DataError("covariance dimension does not match the data");

    const Spectrum spec = spectrum(sigma);
    const double scale = spec.opnorm();
    if (scale == 0.0) throw DataError("zero covariance");
    if (spec.min < -1e-10 * scale) throw DataError("covariance is not positive semidefinite");

    const double root = std::sqrt(scale);
    Matrix y = x / root;
    SymMatrix reduced_sigma = sigma.scaled(1.0 / scale);

    const double rank = cfg.rank_source == RankSource::dimension
                            ? double(p)
                            : std::max(1.0, reduced_sigma.matrix().trace());

    SdrResult res;
    SdrTrace& tr = res.trace;
    tr.schedule = dimension_schedule(static_cast<int>(p));
    const ThresholdInfo th = sdr_threshold(cfg, n, p, rank);
    tr.threshold = th.threshold;
    tr.rate = th.rate;
    tr.tau = th.tau;
    tr.rank = th.rank;
    tr.scale = scale;

    // basis is V_l; y holds X V_l (normalized) and reduced_sigma V_l^T Sigma V_l.
    Matrix basis = Matrix::Identity(p, p);
    Vector total = Vector::Zero(p);
    const std::size_t levels = tr.schedule.levels();

    for (std::size_t l = 0; l < levels; ++l) {
        const int q = tr.schedule.dims[l];
        const int next = tr.schedule.dims[l + 1];
        const int k = q - next;

        LevelTrace lt;
        lt.dim = q;
        lt.kept_dim = k;

        const WeiszfeldResult gm = weiszfeld(y, cfg.rough_gm);
        lt.rough_gm_iterations = gm.iterations;
        const auto kept_rows = filter_indices(y, gm.median, th.threshold * std::sqrt(double(q)));
        if (kept_rows.empty()) throw FilterError(l, th.threshold);
        lt.filtered_count = kept_rows.size();

        const Vector mean = subset_mean(y, kept_rows);
        const SymMatrix cov = subset_covariance(y, kept_rows, mean, cfg.unbiased_covariance);
        const EigenSystem es = sym_eigendecomposition(SymMatrix(cov.matrix() - reduced_sigma.matrix()));

        const Matrix low = es.vectors.leftCols(k);    // U_l^T
        const Matrix high = es.vectors.rightCols(next);  // (U_l^perp)^T
        lt.eigenvalues = es.values.head(k);

        const Vector component = basis * (low * (low.transpose() * mean));
        total += component;
        lt.component = component * root;
        lt.component_norm = lt.component.norm();

        if (cfg.keep_bases) {
            tr.bases.push_back(basis);
            tr.kept.push_back(low.transpose());
        }

        basis = basis * high;
        y = y * high;
        reduced_sigma = reduced_sigma.congruence(high);
        tr.levels.push_back(std::move(lt));
    }

    // Last level: one direction left.
    LevelTrace last;
    last.dim = 1;
    last.kept_dim = 1;
    last.eigenvalues = Vector::Zero(0);
    double location = 0.0;
    if (cfg.last_level == LastLevelRule::median) {
        location = midpoint_median(column_values(y));
        last.filtered = false;
        last.filtered_count = static_cast<std::size_t>(n);
    } else {
        const WeiszfeldResult gm = weiszfeld(y, cfg.rough_gm);
        last.rough_gm_iterations = gm.iterations;
        const auto kept_rows = filter_indices(y, gm.median, th.threshold);
        if (kept_rows.empty()) throw FilterError(levels, th.threshold);
        last.filtered_count = kept_rows.size();
        location = subset_mean(y, kept_rows)(0);
    }
    const Vector component = basis.col(0) * location;
    total += component;
    last.component = component * root;
    last.component_norm = last.component.norm();
    if (cfg.keep_bases) {
        tr.bases.push_back(basis);
        tr.kept.push_back(Matrix::Ones(1, 1));
    }
    tr.levels.push_back(std::move(last));

    res.mean = total * root;
    tr.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SdrResult sdr_estimate_approx(const DataSet& x, const SymMatrix& sigma_tilde, double gamma,
                              SdrConfig cfg) {
    cfg.mode = CovarianceMode::approximate;
    cfg.gamma = gamma;
    return sdr_estimate(x, sigma_tilde, cfg);
}

std::string_view to_string(CovarianceMode m) {
    switch (m) {
        case CovarianceMode::known: return "known";
        case CovarianceMode::approximate: return "approximate";
        case CovarianceMode::subgaussian: return "subgaussian";
    }
    return "unknown";
}

std::string_view to_string(LastLevelRule r) {
    return r == LastLevelRule::median ? "median" : "filtered-mean";
}

}  // namespace sdr
