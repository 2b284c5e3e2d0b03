#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace mcpp {

/// Seeded generator with a platform-independent uniform draw (the standard
/// distributions are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, n), n > 0.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
    /// Index drawn proportionally to nonnegative weights (not all zero).
    std::size_t categorical(std::span<const double> weights);

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

inline std::size_t Rng::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights)
        total += w;
    const double target = uniform() * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0)
            continue;
        last = i;
        acc += weights[i];
        if (target < acc)
            return i;
    }
    return last;
}

}  // namespace mcpp
