#pragma once

#include <cstdint>

namespace nqsim {

/// splitmix64 output function. Used for all seed derivation so that
/// substreams are decorrelated and reproducible across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic substream seed: the (index+1)-th output of a splitmix64
/// sequence started at `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base + index * 0x9e3779b97f4a7c15ULL);
}

// Substream indices within one simulation run.
inline constexpr std::uint64_t kStreamArrival1 = 0;
inline constexpr std::uint64_t kStreamArrival2 = 1;
inline constexpr std::uint64_t kStreamService1 = 2;
inline constexpr std::uint64_t kStreamService2 = 3;
inline constexpr std::uint64_t kStreamInspection = 4;

// Salt offsets for independent replications and paired experiment arms.
inline constexpr std::uint64_t kSaltReplication = 16;
inline constexpr std::uint64_t kSaltSecondArm = 4096;
inline constexpr std::uint64_t kSaltSweep = 65536;

}  // namespace nqsim
