#include "sdr/geometric_median.hpp"

#include "sdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdr {

namespace {

void require_values(std::span<const double> values) {
    if (values.empty()) throw DataError("empty sample");
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("non-finite value");
}

double distances(const DataSet& points, const Vector& center, Vector& out) {
    out = (points.rowwise() - center.transpose()).rowwise().norm();
    return out.sum();
}

// Rows in lexicographic order. Every sum below then runs in the same order
// whatever the input order, so the result is exactly permutation invariant.
DataSet canonical_order(const DataSet& points) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(points.rows()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index j = 0; j < points.cols(); ++j)
            if (points(a, j) != points(b, j)) return points(a, j) < points(b, j);
        return false;
    });
    DataSet out(points.rows(), points.cols());
    for (Eigen::Index i = 0; i < points.rows(); ++i) out.row(i) = points.row(idx[static_cast<std::size_t>(i)]);
    return out;
}

// Exact Weiszfeld steps never increase the objective; anything within this
// relative margin is rounding in the evaluation of the sum.
constexpr double kObjectiveSlack = 1e-13;

}  // namespace

WeiszfeldConfig WeiszfeldConfig::full_accuracy(const DataSet& points) {
    double diameter = 0.0;
    if (points.rows() > 0) {
        const Vector range = points.colwise().maxCoeff() - points.colwise().minCoeff();
        diameter = range.norm();
    }
    const double scale = diameter > 0.0 ? diameter : 1.0;
    return {500, 1e-8 * scale, 1e-12 * scale};
}

void WeiszfeldConfig::validate() const {
    if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
    if (!(singularity_eps > 0.0)) throw InvalidArgument("singularity_eps must be > 0");
}

double univariate_median(std::span<const double> values) {
    require_values(values);
    std::vector<double> v(values.begin(), values.end());
    const std::size_t k = (v.size() + 1) / 2 - 1;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

double midpoint_median(std::span<const double> values) {
    require_values(values);
    std::vector<double> v(values.begin(), values.end());
    const std::size_t n = v.size();
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

Vector coordinatewise_lower_median(const DataSet& points) {
    if (points.rows() == 0) throw DataError("empty sample");
    Vector out(points.cols());
    std::vector<double> column(static_cast<std::size_t>(points.rows()));
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        for (Eigen::Index i = 0; i < points.rows(); ++i) column[i] = points(i, j);
        out(j) = univariate_median(column);
    }
    return out;
}

WeiszfeldResult weiszfeld(const DataSet& points, const WeiszfeldConfig& cfg) {
    cfg.validate();
    if (points.rows() == 0) throw DataError("empty sample");
    if (!points.allFinite()) throw DataError("non-finite sample");

    const DataSet x = canonical_order(points);
    WeiszfeldResult res;
    Vector m = coordinatewise_lower_median(x);
    Vector d;
    double f = distances(x, m, d);
    res.objective.push_back(f);

    Vector next_d;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const Vector w = d.cwiseMax(cfg.singularity_eps).cwiseInverse();
        const Vector next = (x.transpose() * w) / w.sum();
        const double next_f = distances(x, next, next_d);
        if (next_f > f * (1.0 + kObjectiveSlack)) break;

        const double step = (next - m).norm();
        m = next;
        d.swap(next_d);
        f = next_f;
        res.objective.push_back(f);
        res.iterations = it;
        if (step < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    res.median = std::move(m);
    return res;
}

Vector geometric_median(const DataSet& points, const WeiszfeldConfig& cfg) {
    return weiszfeld(points, cfg).median;
}

}  // namespace sdr
