#pragma once

#include <cstdint>
#include <random>

namespace triuni {

/// Seeded random source passed explicitly into every randomized routine.
/// Two Rng objects built from the same seed produce identical streams
/// within one build, which is what the reproducibility contract needs.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    std::uint64_t integer() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace triuni
