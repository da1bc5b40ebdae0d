#pragma once

#include <cstdint>
#include <random>

namespace ranc {

// Seeded generator with explicit bit-to-float mapping so that streams are
// reproducible across standard library implementations (std::mt19937_64 is
// fully specified; the standard distributions are not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 24 bits of resolution.
    float uniform() { return float(gen_() >> 40) * 0x1p-24f; }

    float uniform(float lo, float hi) { return lo + (hi - lo) * uniform(); }

    // Magnitude uniform in [lo, hi], sign equiprobable.
    float signed_magnitude(float lo, float hi) {
        const float m = uniform(lo, hi);
        return (gen_() & 1u) ? m : -m;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace ranc
