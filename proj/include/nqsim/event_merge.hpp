#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "nqsim/events.hpp"
#include "nqsim/streams.hpp"

namespace nqsim {

/// Chronological merge of the four jump-time sequences with a dynamic set of
/// pending threshold expiries. Events sharing the exact same timestamp are
/// delivered in EventKind order (Arrival1, Arrival2, ThresholdExpiry,
/// PotentialCompletion1, PotentialCompletion2); expiries tied with each
/// other come out in ascending job id. Events past the horizon are never
/// returned.
class EventMerger {
 public:
    explicit EventMerger(const EventStreamSet& streams)
        : streams_(&streams), horizon_(streams.horizon) {}

    /// Register the expiry timer for a job. `time` is the job's arrival
    /// time plus the threshold, computed once by the caller and stored
    /// verbatim. Timers past the horizon are dropped.
    void schedule_expiry(double time, JobId job) {
        if (time <= horizon_) {
            expiries_.push(Expiry{time, job});
        }
    }

    /// Earliest remaining event, or std::nullopt at end of horizon.
    std::optional<Event> next() {
        const Event* best = nullptr;
        Event candidate[5];
        int n = 0;
        auto consider = [&](double t, EventKind k, JobId j) {
            candidate[n] = Event{t, k, j};
            if (best == nullptr || before(candidate[n], *best)) {
                best = &candidate[n];
            }
            ++n;
        };
        if (ia1_ < streams_->a1_jumps.size())
            consider(streams_->a1_jumps[ia1_], EventKind::Arrival1, kNoJob);
        if (ia2_ < streams_->a2_jumps.size())
            consider(streams_->a2_jumps[ia2_], EventKind::Arrival2, kNoJob);
        if (!expiries_.empty())
            consider(expiries_.top().time, EventKind::ThresholdExpiry,
                     expiries_.top().job);
        if (iz1_ < streams_->z1_jumps.size())
            consider(streams_->z1_jumps[iz1_], EventKind::PotentialCompletion1,
                     kNoJob);
        if (iz2_ < streams_->z2_jumps.size())
            consider(streams_->z2_jumps[iz2_], EventKind::PotentialCompletion2,
                     kNoJob);
        if (best == nullptr || best->time > horizon_) {
            return std::nullopt;
        }
        const Event out = *best;
        switch (out.kind) {
            case EventKind::Arrival1: ++ia1_; break;
            case EventKind::Arrival2: ++ia2_; break;
            case EventKind::ThresholdExpiry: expiries_.pop(); break;
            case EventKind::PotentialCompletion1: ++iz1_; break;
            case EventKind::PotentialCompletion2: ++iz2_; break;
        }
        clock_.advance(out.time);
        return out;
    }

    const Clock& clock() const { return clock_; }
    double horizon() const { return horizon_; }

 private:
    struct Expiry {
        double time;
        JobId job;
    };
    struct ExpiryLater {
        bool operator()(const Expiry& a, const Expiry& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.job > b.job;
        }
    };

    static bool before(const Event& a, const Event& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.job < b.job;
    }

    const EventStreamSet* streams_;
    double horizon_;
    std::size_t ia1_ = 0, ia2_ = 0, iz1_ = 0, iz2_ = 0;
    std::priority_queue<Expiry, std::vector<Expiry>, ExpiryLater> expiries_;
    Clock clock_;
};

}  // namespace nqsim
