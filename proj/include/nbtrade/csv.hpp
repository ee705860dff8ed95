#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nbtrade {

// Shortest round-trip decimal rendering, locale-independent.  Infinities
// render as "inf"/"-inf"; integral values carry no trailing ".0".
std::string format_double(double value);

// Minimal CSV emitter: fixed header, one row per call, '\n' line ends.
// Values never need quoting here (labels are alphanumeric, numbers plain).
class CsvFile {
public:
    CsvFile(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace nbtrade
