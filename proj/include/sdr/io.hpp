#pragma once

#include "sdr/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace sdr {

// Delimited text matrix: one row per line, fields separated by commas
// and/or whitespace. Blank lines and lines starting with '#' are skipped.
// Throws DataError on ragged rows or unparsable fields.
DataSet parse_matrix(std::istream& in);
DataSet read_matrix(const std::filesystem::path& path);

// %.17g, with "NaN" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

}  // namespace sdr
