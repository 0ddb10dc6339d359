#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "nqsim/discipline.hpp"
#include "nqsim/events.hpp"
#include "nqsim/job.hpp"

namespace nqsim {

/// The six observable counters of one system at one instant.
struct Counters {
    int q1_minus = 0;  // waiting type-1 jobs aged < T
    int q1_plus = 0;   // waiting type-1 jobs aged >= T
    int q2 = 0;        // waiting type-2 jobs (both age classes)
    int r1 = 0;        // server 1 busy
    int r2 = 0;        // server 2 busy on a type-2 job
    int r3 = 0;        // server 2 busy on a type-1 job

    int q1() const { return q1_minus + q1_plus; }
    int waiting() const { return q1() + q2; }
    int in_system() const { return waiting() + r1 + r2 + r3; }

    bool operator==(const Counters&) const = default;
};

/// One row of the per-job service history kept for scripted replays.
struct ServiceRecord {
    JobId job = kNoJob;
    int server = 0;  // 1-based, as reported
    double start = 0.0;
    double departure = -1.0;  // -1 while still in service
};

/// Start/departure log, optionally attached to a SystemState.
struct ServiceLog {
    std::vector<ServiceRecord> records;
    std::array<std::ptrdiff_t, 2> open{-1, -1};  // open record per server
};

/// State of one two-server system: per-type waiting queues split at the
/// type's threshold age, plus the jobs in service. Queues hold jobs in
/// arrival order; service within a type starts in arrival order.
class SystemState {
 public:
    explicit SystemState(const DisciplineSpec& d) : disc_(d) {}

    /// Advance the state by one event. `arrival` must carry the job for
    /// arrival events and is ignored otherwise. Throws InvalidEventError
    /// if the discipline cannot produce the event kind, and
    /// CorruptedTraceError if an expiry references a job id that was
    /// never observed.
    void apply(const Event& ev, const Job* arrival = nullptr);

    Counters counters() const;

    const DisciplineSpec& discipline() const { return disc_; }
    const std::deque<Job>& below(JobType t) const { return queues_[type_index(t)].below; }
    const std::deque<Job>& past(JobType t) const { return queues_[type_index(t)].past; }
    const std::optional<Job>& server(int idx) const { return server_[idx]; }
    double last_update() const { return last_update_; }

    void attach_service_log(ServiceLog* log) { log_ = log; }

    /// Invariant checks: queue ordering, age classification against the
    /// stored expiry times, non-idling, server slot consistency.
    /// `deep` scans every queued job; otherwise only ends are inspected.
    void validate(double now, bool deep = false) const;

 private:
    struct TypeQueues {
        std::deque<Job> below;  // age < threshold, arrival order
        std::deque<Job> past;   // age >= threshold, arrival order
    };

    void on_arrival(const Job& job, double now);
    void on_expiry(JobId id, double now);
    void on_completion(int server_idx, double now);

    /// Best waiting job for a freed server: smallest rank key (arrival
    /// time, or eligibility time under ServiceOrder::Eligibility) among
    /// the eligible jobs, exact key ties going to the server's own type.
    /// Returns the queue to pop from, or nullptr.
    std::deque<Job>* pick_for_server(int server_idx);

    /// Try to start `job` (newly arrived or newly past-threshold, so it is
    /// the longest-waiting eligible job wherever it is eligible) at an
    /// idle server, preferring its own-type server. `aged` marks whether
    /// the job has reached its threshold.
    bool try_start_fresh(const Job& job, bool aged, double now);

    void start_service(const Job& job, int server_idx, double now);
    void record_departure(int server_idx, double now);

    DisciplineSpec disc_;
    std::array<TypeQueues, 2> queues_;
    std::array<std::optional<Job>, 2> server_;
    ServiceLog* log_ = nullptr;
    double last_update_ = 0.0;
    JobId last_seen_id_ = kNoJob;
};

}  // namespace nqsim
