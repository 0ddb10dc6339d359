#include "nqsim/streams.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "nqsim/errors.hpp"
#include "nqsim/seeds.hpp"

namespace nqsim {

namespace {

// 53-bit uniform strictly inside (0, 1), so -log(u) is finite and positive.
double uniform_open(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> sample_poisson_stream(double rate, double horizon,
                                          std::uint64_t substream_seed) {
    if (rate < 0.0 || !std::isfinite(rate)) {
        throw InvalidParameterError("sample_poisson_stream: rate must be >= 0");
    }
    if (horizon <= 0.0 || !std::isfinite(horizon)) {
        throw InvalidParameterError("sample_poisson_stream: horizon must be > 0");
    }
    std::vector<double> jumps;
    if (rate == 0.0) {
        return jumps;
    }
    jumps.reserve(static_cast<std::size_t>(rate * horizon * 1.1) + 16);
    std::mt19937_64 gen(substream_seed);
    double t = 0.0;
    for (;;) {
        const double gap = -std::log(uniform_open(gen)) / rate;
        double next = t + gap;
        if (next <= t) {
            // Sub-ulp gap; nudge forward to keep the sequence strictly
            // increasing under floating-point rounding.
            next = std::nextafter(t, std::numeric_limits<double>::infinity());
        }
        if (next > horizon) {
            break;
        }
        jumps.push_back(next);
        t = next;
    }
    return jumps;
}

EventStreamSet build_coupled_streams(const StreamRates& rates, double horizon,
                                     std::uint64_t master_seed) {
    if (rates.lambda1 <= 0.0 || rates.lambda2 <= 0.0 || rates.mu1 <= 0.0 ||
        rates.mu2 <= 0.0) {
        throw InvalidParameterError(
            "build_coupled_streams: all rates must be > 0");
    }
    EventStreamSet set;
    set.master_seed = master_seed;
    set.horizon = horizon;
    set.a1_jumps = sample_poisson_stream(rates.lambda1, horizon,
                                         derive_seed(master_seed, kStreamArrival1));
    set.a2_jumps = sample_poisson_stream(rates.lambda2, horizon,
                                         derive_seed(master_seed, kStreamArrival2));
    set.z1_jumps = sample_poisson_stream(rates.mu1, horizon,
                                         derive_seed(master_seed, kStreamService1));
    set.z2_jumps = sample_poisson_stream(rates.mu2, horizon,
                                         derive_seed(master_seed, kStreamService2));
    return set;
}

}  // namespace nqsim
