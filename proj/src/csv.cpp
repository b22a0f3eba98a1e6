#include "triuni/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "triuni/errors.hpp"

namespace triuni {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_commas(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
    }
    return out;
}

} // namespace

void CsvTable::write(std::ostream& os) const {
    for (const auto& m : metadata) os << "# " << m << "\n";
    os << join_commas(header) << "\n";
    for (const auto& r : rows) os << join_commas(r) << "\n";
}

std::string CsvTable::to_string() const {
    std::ostringstream ss;
    write(ss);
    return ss.str();
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream ss(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            t.metadata.push_back(line.substr(start));
            continue;
        }
        if (!header_seen) {
            t.header = split_commas(line);
            header_seen = true;
        } else {
            auto cells = split_commas(line);
            if (cells.size() != t.header.size())
                throw validation_error("CsvTable::parse: ragged row");
            t.rows.push_back(std::move(cells));
        }
    }
    if (!header_seen) throw validation_error("CsvTable::parse: missing header row");
    return t;
}

CsvTable CsvTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("CsvTable::load: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void CsvTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw validation_error("CsvTable::save: cannot open " + path);
    write(out);
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_num(int v) { return std::to_string(v); }
std::string csv_num(long long v) { return std::to_string(v); }

} // namespace triuni
