#include "mvsv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvsv/errors.hpp"

namespace mvsv {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(const std::string& field) {
    if (field.empty()) {
        return std::nullopt;
    }
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (*begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::vector<Vector> Dataset::observations() const {
    std::vector<Vector> out;
    out.reserve(values.rows());
    for (Index k = 0; k < values.rows(); ++k) {
        out.emplace_back(values.row(k).transpose());
    }
    return out;
}

RawTable parse_csv(std::istream& in) {
    RawTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first_content = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (first_content) {
            first_content = false;
            width = fields.size();
            bool numeric = true;
            for (const auto& f : fields) {
                numeric = numeric && parse_number(f).has_value();
            }
            if (!numeric) {
                table.names = fields;
                continue;
            }
        }
        if (fields.size() != width) {
            throw RaggedRows("row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(width));
        }
        std::vector<double> row;
        row.reserve(width);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = parse_number(fields[c]);
            if (!v) {
                throw ParseError("cannot parse '" + fields[c] + "' as a number", line_no, c + 1);
            }
            if (!std::isfinite(*v)) {
                throw NonFiniteValue("non-finite value '" + fields[c] + "'", line_no, c + 1);
            }
            row.push_back(*v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InvalidData("CSV contains no data rows");
    }
    if (table.names.empty()) {
        for (std::size_t c = 0; c < width; ++c) {
            table.names.push_back("y" + std::to_string(c + 1));
        }
    }
    table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return table;
}

RawTable load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return parse_csv(in);
}

Dataset standardize(const Matrix& raw) {
    const Index steps = raw.rows();
    if (steps < 2) {
        throw InvalidData("standardization needs at least 2 time points");
    }
    Dataset out;
    out.values.resize(steps, raw.cols());
    for (Index c = 0; c < raw.cols(); ++c) {
        const double mean = raw.col(c).mean();
        const Vector centered = raw.col(c).array() - mean;
        const double var = centered.squaredNorm() / static_cast<double>(steps - 1);
        if (!(var > 0.0)) {
            throw ConstantChannel("channel " + std::to_string(c + 1) + " has zero variance");
        }
        out.values.col(c) = centered / std::sqrt(var);
    }
    for (Index c = 0; c < raw.cols(); ++c) {
        out.channel_names.push_back("y" + std::to_string(c + 1));
    }
    return out;
}

Dataset standardize(const RawTable& raw) {
    Dataset out = standardize(raw.values);
    out.channel_names = raw.names;
    return out;
}

Dataset as_dataset(const RawTable& raw) {
    Dataset out;
    out.values = raw.values;
    out.channel_names = raw.names;
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& rows) {
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << (c ? "," : "") << header[c];
    }
    out << '\n';
    for (Index r = 0; r < rows.rows(); ++r) {
        for (Index c = 0; c < rows.cols(); ++c) {
            out << (c ? "," : "") << format_double(rows(r, c));
        }
        out << '\n';
    }
}

}  // namespace mvsv
