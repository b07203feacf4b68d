#pragma once

#include "sdr/baselines.hpp"
#include "sdr/bench.hpp"
#include "sdr/contamination.hpp"
#include "sdr/error.hpp"
#include "sdr/estimator.hpp"
#include "sdr/geometric_median.hpp"
#include "sdr/io.hpp"
#include "sdr/rng.hpp"
#include "sdr/schedule.hpp"
#include "sdr/spectral.hpp"
