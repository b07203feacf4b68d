#include "sdr/contamination.hpp"

#include "sdr/error.hpp"
#include "sdr/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace sdr {

namespace {

enum Stream : std::uint64_t { inliers = 1, positions = 2, outliers = 3, direction = 4 };

Matrix psd_root(const SymMatrix& sigma) {
    const EigenSystem es = sym_eigendecomposition(sigma);
    const Eigen::Index q = sigma.dim();
    if (q == 0) return {};
    const double top = std::max(std::abs(es.values(0)), std::abs(es.values(q - 1)));
    if (es.values(0) < -1e-10 * top) throw DataError("covariance is not positive semidefinite");
    const Vector roots = es.values.cwiseMax(0.0).cwiseSqrt();
    return es.vectors * roots.asDiagonal() * es.vectors.transpose();
}

template <class Draw>
DataSet sample_rows(std::size_t n, const Vector& mu, const SymMatrix& sigma, Draw draw) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (sigma.dim() != mu.size()) throw InvalidArgument("mean and covariance sizes differ");
    const Eigen::Index p = mu.size();
    Matrix zeta(static_cast<Eigen::Index>(n), p);
    for (Eigen::Index i = 0; i < zeta.rows(); ++i)
        for (Eigen::Index j = 0; j < p; ++j) zeta(i, j) = draw();
    const Matrix& s = sigma.matrix();
    DataSet x;
    if (s.isDiagonal(0.0)) {
        if ((s.diagonal().array() < 0.0).any()) throw DataError("covariance is not positive semidefinite");
        x = zeta * s.diagonal().cwiseSqrt().asDiagonal();
    } else {
        x = zeta * psd_root(sigma);  // the root is symmetric
    }
    x.rowwise() += mu.transpose();
    return x;
}

// k distinct row indices by a partial Fisher-Yates shuffle, ascending.
std::vector<Eigen::Index> pick_rows(std::size_t n, std::size_t k, std::uint64_t seed) {
    RandomStream rng(seed, positions);
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

void check_sample(const LabeledSample& s) {
    if (s.inlier_mask.size() != static_cast<std::size_t>(s.x.rows()))
        throw InvalidArgument("mask length does not match the number of rows");
}

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps < 0.5)) throw InvalidArgument("eps must lie in [0, 1/2)");
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::cuo: return "cuo";
        case Scheme::gmc: return "gmc";
        case Scheme::cse: return "cse";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "cuo") return Scheme::cuo;
    if (lower == "gmc") return Scheme::gmc;
    if (lower == "cse") return Scheme::cse;
    throw InvalidArgument("unknown contamination scheme '" + std::string(name) + "'");
}

void ContaminationSpec::validate() const {
    check_eps(eps);
    if (scheme == Scheme::gmc && !(shift_norm >= 0.0 && std::isfinite(shift_norm)))
        throw InvalidArgument("shift_norm must be finite and >= 0");
    if (scheme == Scheme::cuo && !std::isfinite(uniform_high))
        throw InvalidArgument("uniform_high must be finite");
}

std::size_t LabeledSample::outlier_count() const {
    return static_cast<std::size_t>(std::count(inlier_mask.begin(), inlier_mask.end(), false));
}

std::size_t outlier_count(std::size_t n, double eps) {
    return static_cast<std::size_t>(std::floor(double(n) * eps + 1e-9));
}

DataSet sample_gaussian(std::size_t n, const Vector& mu, const SymMatrix& sigma, std::uint64_t seed) {
    RandomStream rng(seed, inliers);
    return sample_rows(n, mu, sigma, [&] { return rng.normal(); });
}

DataSet sample_subgaussian(std::size_t n, const Vector& mu, const SymMatrix& sigma,
                           SubGaussianFamily family, std::uint64_t seed) {
    RandomStream rng(seed, inliers);
    if (family == SubGaussianFamily::rademacher)
        return sample_rows(n, mu, sigma, [&] { return (rng.next_u32() & 1u) ? 1.0 : -1.0; });
    const double half_width = std::sqrt(3.0);
    return sample_rows(n, mu, sigma, [&] { return rng.uniform(-half_width, half_width); });
}

LabeledSample contaminate_cuo(LabeledSample sample, const ContaminationSpec& spec) {
    spec.validate();
    check_sample(sample);
    if (spec.scheme != Scheme::cuo) throw InvalidArgument("spec is not a CUO spec");
    const auto n = static_cast<std::size_t>(sample.x.rows());
    const Eigen::Index p = sample.x.cols();
    RandomStream rng(spec.seed, outliers);
    for (Eigen::Index row : pick_rows(n, outlier_count(n, spec.eps), spec.seed)) {
        Vector center(p);
        for (Eigen::Index j = 0; j < p; ++j) center(j) = rng.uniform(0.0, spec.uniform_high);
        for (Eigen::Index j = 0; j < p; ++j) sample.x(row, j) = center(j) + rng.normal();
        sample.inlier_mask[static_cast<std::size_t>(row)] = false;
    }
    return sample;
}

LabeledSample contaminate_gmc(LabeledSample sample, const ContaminationSpec& spec) {
    spec.validate();
    check_sample(sample);
    if (spec.scheme != Scheme::gmc) throw InvalidArgument("spec is not a GMC spec");
    const auto n = static_cast<std::size_t>(sample.x.rows());
    const Eigen::Index p = sample.x.cols();

    RandomStream dir_rng(spec.seed, direction);
    Vector u(p);
    do {
        for (Eigen::Index j = 0; j < p; ++j) u(j) = dir_rng.normal();
    } while (u.norm() == 0.0);
    const Vector center = spec.shift_norm * u.normalized();

    RandomStream rng(spec.seed, outliers);
    for (Eigen::Index row : pick_rows(n, outlier_count(n, spec.eps), spec.seed)) {
        for (Eigen::Index j = 0; j < p; ++j) sample.x(row, j) = center(j) + rng.normal();
        sample.inlier_mask[static_cast<std::size_t>(row)] = false;
    }
    return sample;
}

LabeledSample contaminate_cse(LabeledSample sample, double eps) {
    check_eps(eps);
    check_sample(sample);
    const auto n = static_cast<std::size_t>(sample.x.rows());
    const std::size_t k = outlier_count(n, eps);
    if (k == 0) return sample;

    const Eigen::Index p = sample.x.cols();
    const Vector mean = sample_mean(sample.x);
    Vector v = bottom_k_eigenvectors(sample_covariance(sample.x), 1).row(0).transpose();
    orient(v);

    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i)
        score[i] = std::abs((sample.x.row(static_cast<Eigen::Index>(i)).transpose() - mean).dot(v));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    const Vector planted = std::sqrt(double(p)) * v;
    for (std::size_t r = 0; r < k; ++r) {
        sample.x.row(static_cast<Eigen::Index>(order[r])) = planted.transpose();
        sample.inlier_mask[order[r]] = false;
    }
    return sample;
}

LabeledSample contaminate(LabeledSample sample, const ContaminationSpec& spec) {
    switch (spec.scheme) {
        case Scheme::cuo: return contaminate_cuo(std::move(sample), spec);
        case Scheme::gmc: return contaminate_gmc(std::move(sample), spec);
        case Scheme::cse: return contaminate_cse(std::move(sample), spec.eps);
    }
    throw InvalidArgument("unknown contamination scheme");
}

LabeledSample generate_sample(std::size_t n, std::size_t p, const ContaminationSpec& spec) {
    spec.validate();
    const auto dim = static_cast<Eigen::Index>(p);
    LabeledSample s;
    s.true_mean = Vector::Zero(dim);
    s.x = sample_gaussian(n, s.true_mean, SymMatrix::identity(dim), spec.seed);
    s.inlier_mask.assign(n, true);
    return contaminate(std::move(s), spec);
}

}  // namespace sdr
