#pragma once

#include <cmath>
#include <cstdint>

#include "besovlab/common.hpp"

namespace besovlab {

/// Counter-based stream: every job derives its own stream from (master seed,
/// job index), so parallel schedules cannot change what any job draws.
/// splitmix64 is used both as the mixer and as the generator; it is exact and
/// identical on every platform, unlike the std:: distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_job(std::uint64_t master_seed, std::uint64_t job_index) {
        return Rng(mix(master_seed + 0x9e3779b97f4a7c15ULL * (job_index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (portable, no std::normal_distribution).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace besovlab
