#include "triuni/gate_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace triuni {

std::string gate_to_json(const Gate3& g, const std::string& name) {
    nlohmann::json j;
    j["format"] = kGateFormat;
    j["leg_convention"] = kLegConvention;
    if (!name.empty()) j["name"] = name;
    j["dim"] = 8;
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            entries.push_back({g(r, c).real(), g(r, c).imag()});
    j["entries"] = entries;
    j["hash"] = gate_hash_hex(g);
    return j.dump(2) + "\n";
}

Gate3 gate_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.value("format", "") != kGateFormat)
        throw validation_error("gate_from_json: unknown format tag");
    if (j.value("leg_convention", "") != kLegConvention)
        throw validation_error("gate_from_json: leg convention mismatch");
    const auto& entries = j.at("entries");
    if (entries.size() != 64) throw validation_error("gate_from_json: need 64 entries");
    Gate3 g;
    for (int k = 0; k < 64; ++k)
        g(k / 8, k % 8) = Complex(entries[k][0].get<double>(), entries[k][1].get<double>());
    return g;
}

Gate3 load_gate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("load_gate: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return gate_from_json(ss.str());
}

void save_gate(const Gate3& g, const std::string& path, const std::string& name) {
    std::ofstream out(path);
    if (!out) throw validation_error("save_gate: cannot open " + path);
    out << gate_to_json(g, name);
}

std::uint64_t gate_hash(const Mat& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffull;
            h *= 1099511628211ull;
        }
    };
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            mix(g(r, c).real());
            mix(g(r, c).imag());
        }
    }
    return h;
}

std::string gate_hash_hex(const Mat& g) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(gate_hash(g)));
    return buf;
}

} // namespace triuni
