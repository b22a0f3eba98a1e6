#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace triuni {

/// CSV with '#'-prefixed metadata lines, a header row and string cells.
/// Numeric cells are written with %.17g so identical data produces
/// byte-identical files.
struct CsvTable {
    std::vector<std::string> metadata;  // without the leading "# "
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os) const;
    std::string to_string() const;
    static CsvTable parse(const std::string& text);
    static CsvTable load(const std::string& path);
    void save(const std::string& path) const;
};

std::string csv_num(double v);
std::string csv_num(int v);
std::string csv_num(long long v);

} // namespace triuni
