#pragma once

#include "sdr/spectral.hpp"

#include <vector>

namespace sdr {

// Lower median of every column.
Vector coordinatewise_median(const DataSet& x);

// Full-accuracy Weiszfeld geometric median.
Vector geometric_median_estimator(const DataSet& x);

// Mean of the rows flagged true; DataError when none is.
Vector oracle_mean(const DataSet& x, const std::vector<bool>& inlier_mask);

}  // namespace sdr
