#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mvsv/matrix.hpp"

namespace mvsv {

/// Parsed CSV contents before standardization.
struct RawTable {
    std::vector<std::string> names;
    Matrix values;  // K x m
};

/// Standardized multichannel series.
struct Dataset {
    Matrix values;  // K x m, columns with mean 0 and sample sd 1
    std::vector<std::string> channel_names;
    std::optional<double> sampling_interval;

    Index steps() const noexcept { return values.rows(); }
    Index channels() const noexcept { return values.cols(); }
    std::vector<Vector> observations() const;
};

/// Comma-separated numeric rows, LF or CRLF. The first row is a header when
/// any of its fields is not a number; without one, channels are named
/// y1..ym. Errors carry 1-based file row and column.
RawTable parse_csv(std::istream& in);
RawTable load_csv(const std::filesystem::path& path);

/// Column-wise (x - mean) / sd with the K - 1 divisor.
Dataset standardize(const RawTable& raw);
Dataset standardize(const Matrix& raw);

/// Wraps a table without rescaling (--no-standardize).
Dataset as_dataset(const RawTable& raw);

void write_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& rows);

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

}  // namespace mvsv
