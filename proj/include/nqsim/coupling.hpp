#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nqsim/discipline.hpp"
#include "nqsim/mm1.hpp"
#include "nqsim/scenario.hpp"
#include "nqsim/streams.hpp"
#include "nqsim/system.hpp"
#include "nqsim/trace.hpp"

namespace nqsim {

/// Everything an observer may inspect right after one event has been applied
/// to all coupled systems (pointers are null when a component is absent).
struct SampleContext {
    double time = 0.0;
    std::optional<EventKind> kind;  ///< empty for the initial sample
    const SystemState* primary = nullptr;
    const SystemState* secondary = nullptr;
    const Mm1State* lb_server2 = nullptr;  ///< companion on type-2 streams
    const Mm1State* lb_total = nullptr;    ///< companion on pooled streams
};

class CoupledObserver {
public:
    virtual ~CoupledObserver() = default;
    virtual void on_sample(const SampleContext& ctx) = 0;
    /// Called once after the last event; the state is unchanged from the
    /// final sample until `horizon`.
    virtual void on_end(double /*horizon*/) {}
};

/// Low-level driver input: one shared stream set feeding one or two systems
/// plus optional single-server companions. When `secondary` is present its
/// per-type thresholds must equal the primary's, so that one scheduled
/// eligibility expiry serves both systems.
struct DriverSetup {
    const EventStreamSet* streams = nullptr;
    DisciplineSpec primary;
    std::optional<DisciplineSpec> secondary;
    bool with_mm1 = false;
};

/// Runs the event loop over the merged streams, applying each event to every
/// attached system and invoking the observer after each one (plus an initial
/// empty-state sample at time zero).
void run_events(const DriverSetup& setup, CoupledObserver& observer);

/// Same, but also records per-job service assignments of the primary (and
/// secondary, when given) into the supplied logs. Null logs are skipped.
void run_events(const DriverSetup& setup, CoupledObserver& observer,
                ServiceLog* primary_log, ServiceLog* secondary_log);

/// Streams a coupled scenario into the observer. For PairKind::OrUb the
/// config's model selects the primary (Or or Fcfs) and the bound side uses
/// the same threshold; for PairKind::OrMm1 the primary runs alongside the
/// two single-server companions.
void run_coupled(const ScenarioConfig& config, PairKind pair, CoupledObserver& observer);

/// Materializes a full trace, including sorted id sets for both systems of
/// an OrUb pair.
CoupledTrace run_coupled(const ScenarioConfig& config, PairKind pair);

/// Negative control: the same scenario run twice with unrelated randomness,
/// sampled on the union of both event sequences. Dominance has no reason to
/// hold on such a trace.
CoupledTrace run_decoupled_or_ub(const ScenarioConfig& config);

/// Sorted waiting-queue id snapshot of a live system.
QueueSetIds snapshot_sets(const SystemState& state);

/// Count-dominance comparisons on every sample of an OrUb trace.
/// Throws InvalidTraceError for other pair kinds.
std::vector<ViolationReport> check_dominance(const CoupledTrace& trace);

/// Id-set containment comparisons on every sample of an OrUb trace with
/// recorded sets. Throws InvalidTraceError otherwise. For a containment
/// violation, lhs is the number of missing ids and rhs is zero.
std::vector<ViolationReport> check_subsets(const CoupledTrace& trace);

/// Single-server lower-bound comparisons on every sample of an OrMm1 trace.
/// Throws InvalidTraceError for other pair kinds.
std::vector<ViolationReport> check_lower_bounds(const CoupledTrace& trace);

struct CheckSummary {
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t sandwich_violations = 0;
    std::vector<ViolationReport> first_reports;  ///< capped at max_reports
};

/// Observer that verifies every sample in O(1) memory. For coupled pairs the
/// containment checks exploit that both waiting sets are contiguous ranges
/// of the shared per-type arrival order, so front/back ids decide subsetness;
/// such a containment report carries lhs = 1, rhs = 0 as a marker (exact
/// missing counts come from check_subsets on a materialized trace). Also
/// verifies the structural sandwich: waiting jobs <= jobs in system <=
/// waiting jobs + number of servers.
class StreamingChecker : public CoupledObserver {
public:
    struct Options {
        std::size_t max_reports = 16;
    };

    explicit StreamingChecker(PairKind pair);
    StreamingChecker(PairKind pair, Options options);

    void on_sample(const SampleContext& ctx) override;
    const CheckSummary& summary() const { return summary_; }

private:
    void report(const SampleContext& ctx, Inequality iq, long lhs, long rhs);

    PairKind pair_;
    Options options_;
    CheckSummary summary_;
};

}  // namespace nqsim
