// Counter-based pseudo-random source: every draw is a pure function of
// (seed, stream, counter), so parallel generation is reproducible no matter
// how work is scheduled. One stream per path index by convention.
//
// Mixing function: SplitMix64 finalizer applied to a Weyl-sequence blend of
// the three inputs. Normals via the Acklam inverse-CDF approximation refined
// by one Halley step (|error| < 1e-13, deterministic, no rejection).

#pragma once

#include <cstdint>

namespace bgm::rng {

// 64-bit mix of (seed, stream, counter); SplitMix64 finalizer core.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t counter);

// Uniform draw in the open interval (0,1).
double uniform01(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t counter);

// Standard normal draw.
double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

// Inverse standard normal CDF, p in (0,1).
double normal_icdf(double p);

} // namespace bgm::rng
