#pragma once

#include <cstdint>
#include <string>

#include "triuni/tensor.hpp"

namespace triuni {

inline constexpr const char* kGateFormat = "triuni-gate/1";
inline constexpr const char* kLegConvention = "in(a1,a2,a3)-out(a4,a5,a6)-rowmajor-msb-first";

/// Row-major [re, im] entries plus format and leg-convention tags.
std::string gate_to_json(const Gate3& g, const std::string& name = "");
Gate3 gate_from_json(const std::string& text);
Gate3 load_gate(const std::string& path);
void save_gate(const Gate3& g, const std::string& path, const std::string& name = "");

/// FNV-1a over the raw entry bytes in row-major order; stable within a
/// build, used to stamp outputs with the gate they came from.
std::uint64_t gate_hash(const Mat& g);
std::string gate_hash_hex(const Mat& g);

} // namespace triuni
