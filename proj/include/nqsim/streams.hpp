#pragma once

#include <cstdint>
#include <vector>

#include "nqsim/events.hpp"

namespace nqsim {

/// The four coupled Poisson jump-time sequences driving one run (or one
/// coupled pair of runs). Immutable after construction; a coupled pair of
/// systems consumes a single shared instance, never per-system resamples.
struct EventStreamSet {
    std::vector<double> a1_jumps;  // type-1 arrival instants
    std::vector<double> a2_jumps;  // type-2 arrival instants
    std::vector<double> z1_jumps;  // potential completions, server 1
    std::vector<double> z2_jumps;  // potential completions, server 2
    std::uint64_t master_seed = 0;
    double horizon = 0.0;
};

/// Jump times of a homogeneous Poisson process on (0, horizon], strictly
/// increasing, generated eagerly. Deterministic in `substream_seed`.
/// rate == 0 yields an empty sequence.
/// Throws InvalidParameterError for rate < 0 or horizon <= 0.
std::vector<double> sample_poisson_stream(double rate, double horizon,
                                          std::uint64_t substream_seed);

/// Rates of the four driving streams. Used both for sampled scenarios and
/// as the carrier for explicitly scripted jump lists.
struct StreamRates {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

/// Build the shared stream set for a run from four independent substreams
/// derived from `master_seed`. All four rates must be positive.
EventStreamSet build_coupled_streams(const StreamRates& rates, double horizon,
                                     std::uint64_t master_seed);

}  // namespace nqsim
