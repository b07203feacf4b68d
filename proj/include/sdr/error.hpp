#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdr {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter outside its documented range (k > q, gamma > 1/2, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// The data itself is unusable: empty sample, non-finite entries, a
// non-PSD covariance, an unparsable input file.
class DataError : public Error {
public:
    using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Raised when a filtering step discards every observation. This only
// happens when the threshold is mis-scaled, so it is always reported.
class FilterError : public Error {
public:
    FilterError(std::size_t level, double threshold)
        : Error("all points filtered out at level " + std::to_string(level) +
                " (t = " + std::to_string(threshold) + ")"),
          level_(level), threshold_(threshold) {}

    std::size_t level() const noexcept { return level_; }
    double threshold() const noexcept { return threshold_; }

private:
    std::size_t level_;
    double threshold_;
};

}  // namespace sdr
