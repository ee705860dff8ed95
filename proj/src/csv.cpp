#include "nbtrade/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace nbtrade {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0.0 ? "inf" : "-inf";
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc())
        throw std::runtime_error("number formatting failed");
    return std::string(buffer, ptr);
}

CsvFile::CsvFile(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open output file: " + path);
    row(header);
}

void CsvFile::row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_)
        throw std::runtime_error("row width mismatch in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

} // namespace nbtrade
