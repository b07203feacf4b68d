#include "sdr/baselines.hpp"

#include "sdr/error.hpp"
#include "sdr/geometric_median.hpp"

namespace sdr {

Vector coordinatewise_median(const DataSet& x) {
    if (!x.allFinite()) throw DataError("non-finite sample");
    return coordinatewise_lower_median(x);
}

Vector geometric_median_estimator(const DataSet& x) {
    return geometric_median(x, WeiszfeldConfig::full_accuracy(x));
}

Vector oracle_mean(const DataSet& x, const std::vector<bool>& inlier_mask) {
    if (inlier_mask.size() != static_cast<std::size_t>(x.rows()))
        throw InvalidArgument("mask length does not match the number of rows");
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < inlier_mask.size(); ++i)
        if (inlier_mask[i]) rows.push_back(static_cast<Eigen::Index>(i));
    if (rows.empty()) throw DataError("no inliers selected");
    return subset_mean(x, rows);
}

}  // namespace sdr
