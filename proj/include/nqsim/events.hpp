#pragma once

#include <cstdint>
#include <string_view>

namespace nqsim {

using JobId = std::uint64_t;
inline constexpr JobId kNoJob = 0;

/// The five transitions that can change the state of a system, plus nothing
/// else. The enumerator order doubles as the processing priority for events
/// carrying the exact same timestamp.
enum class EventKind : int {
    Arrival1 = 0,
    Arrival2 = 1,
    ThresholdExpiry = 2,
    PotentialCompletion1 = 3,
    PotentialCompletion2 = 4,
};

inline std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Arrival1: return "arrival1";
        case EventKind::Arrival2: return "arrival2";
        case EventKind::ThresholdExpiry: return "threshold_expiry";
        case EventKind::PotentialCompletion1: return "potential_completion1";
        case EventKind::PotentialCompletion2: return "potential_completion2";
    }
    return "unknown";
}

/// A tagged occurrence at a time point. `job` is meaningful only for
/// ThresholdExpiry events; the expiry time is computed once at scheduling
/// time (arrival + threshold) and never recomputed.
struct Event {
    double time = 0.0;
    EventKind kind = EventKind::Arrival1;
    JobId job = kNoJob;
};

/// Simulation clock. `now` is nondecreasing across a run; `last_event` is
/// the time of the previously processed event.
struct Clock {
    double now = 0.0;
    double last_event = 0.0;

    void advance(double t) {
        last_event = now;
        now = t;
    }
};

}  // namespace nqsim
