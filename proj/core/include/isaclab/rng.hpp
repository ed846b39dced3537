// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace isaclab {

/// Counter-addressed pseudo-random stream built on the SplitMix64 update.
///
/// A stream is fully determined by a (seed, stream) pair, so sample i of a
/// Monte Carlo run can be generated on any worker in any order and still
/// produce the same values. The raw 64-bit output passes standard batteries
/// well enough for simulation use; this is not a cryptographic generator.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal() {
        double u1 = next_double();
        double u2 = next_double();
        // Guard the log: map u1 = 0 to the smallest positive representable draw.
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Circularly-symmetric complex normal CN(0,1): unit total variance,
    /// i.e. variance 1/2 per real component, so |z|^2 ~ Exp(1).
    std::complex<double> cnormal() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-std::log(u1)); // radius for total variance 1
        const double w = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(w), r * std::sin(w)};
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace isaclab
