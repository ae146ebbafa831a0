#pragma once

#include <cstdint>
#include <random>

namespace ghacpp {

/// Deterministic RNG for planning. mt19937_64 output is fully specified by the
/// standard; the distribution helpers below are hand-rolled so that draw
/// sequences are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    size_t uniform_index(size_t n) { return static_cast<size_t>(next_u64() % n); }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool bernoulli(double p) { return uniform_real() < p; }

  private:
    std::mt19937_64 engine_;
};

} // namespace ghacpp
