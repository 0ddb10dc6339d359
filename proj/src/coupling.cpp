#include "nqsim/coupling.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "nqsim/errors.hpp"
#include "nqsim/event_merge.hpp"
#include "nqsim/job.hpp"
#include "nqsim/seeds.hpp"

namespace nqsim {

const char* to_string(Inequality iq) {
    switch (iq) {
        case Inequality::Q1Minus: return "Q1MINUS";
        case Inequality::Q1Plus: return "Q1PLUS";
        case Inequality::Q2: return "Q2";
        case Inequality::Cust1: return "CUST1";
        case Inequality::Serv2: return "SERV2";
        case Inequality::Subset1Minus: return "SUBSET1M";
        case Inequality::Subset1Plus: return "SUBSET1P";
        case Inequality::Subset2: return "SUBSET2";
        case Inequality::LowerBoundN2: return "LB_N2";
        case Inequality::LowerBoundN: return "LB_N";
    }
    return "?";
}

namespace {

JobType arrival_type(EventKind kind) {
    return kind == EventKind::Arrival1 ? JobType::Type1 : JobType::Type2;
}

bool is_arrival(EventKind kind) {
    return kind == EventKind::Arrival1 || kind == EventKind::Arrival2;
}

void append_ids(const std::deque<Job>& queue, std::vector<JobId>& out) {
    for (const Job& j : queue) out.push_back(j.id);
}

}  // namespace

QueueSetIds snapshot_sets(const SystemState& state) {
    QueueSetIds sets;
    append_ids(state.below(JobType::Type1), sets.q1_minus);
    append_ids(state.past(JobType::Type1), sets.q1_plus);
    // Jobs past their threshold arrived before the ones still below it, so
    // concatenation keeps the ids ascending.
    append_ids(state.past(JobType::Type2), sets.q2);
    append_ids(state.below(JobType::Type2), sets.q2);
    return sets;
}

void run_events(const DriverSetup& setup, CoupledObserver& observer) {
    run_events(setup, observer, nullptr, nullptr);
}

void run_events(const DriverSetup& setup, CoupledObserver& observer,
                ServiceLog* primary_log, ServiceLog* secondary_log) {
    if (setup.streams == nullptr) {
        throw InvalidParameterError("driver needs an event stream set");
    }
    SystemState primary(setup.primary);
    if (primary_log != nullptr) primary.attach_service_log(primary_log);

    std::optional<SystemState> secondary;
    if (setup.secondary.has_value()) {
        assert(setup.secondary->threshold == setup.primary.threshold &&
               "coupled systems must share eligibility thresholds");
        secondary.emplace(*setup.secondary);
        if (secondary_log != nullptr) secondary->attach_service_log(secondary_log);
    }

    Mm1State lb_n2;
    Mm1State lb_total;

    SampleContext ctx;
    ctx.primary = &primary;
    ctx.secondary = secondary.has_value() ? &*secondary : nullptr;
    ctx.lb_server2 = setup.with_mm1 ? &lb_n2 : nullptr;
    ctx.lb_total = setup.with_mm1 ? &lb_total : nullptr;

    observer.on_sample(ctx);  // time 0, empty systems

    EventMerger merger(*setup.streams);
    JobId next_id = 1;
    while (std::optional<Event> ev = merger.next()) {
        Job job;
        const Job* arrival = nullptr;
        if (is_arrival(ev->kind)) {
            job = Job{next_id++, arrival_type(ev->kind), ev->time};
            arrival = &job;
            const double t = setup.primary.threshold[type_index(job.type)];
            if (t > 0.0) merger.schedule_expiry(job.arrival_time + t, job.id);
        }
        primary.apply(*ev, arrival);
        if (secondary.has_value()) secondary->apply(*ev, arrival);
        if (setup.with_mm1) {
            switch (ev->kind) {
                case EventKind::Arrival1:
                    lb_total = mm1_step(lb_total, Mm1Event::Arrival);
                    break;
                case EventKind::Arrival2:
                    lb_n2 = mm1_step(lb_n2, Mm1Event::Arrival);
                    lb_total = mm1_step(lb_total, Mm1Event::Arrival);
                    break;
                case EventKind::PotentialCompletion1:
                    lb_total = mm1_step(lb_total, Mm1Event::PotentialCompletion);
                    break;
                case EventKind::PotentialCompletion2:
                    lb_n2 = mm1_step(lb_n2, Mm1Event::PotentialCompletion);
                    lb_total = mm1_step(lb_total, Mm1Event::PotentialCompletion);
                    break;
                case EventKind::ThresholdExpiry:
                    break;
            }
        }
        ctx.time = ev->time;
        ctx.kind = ev->kind;
        observer.on_sample(ctx);
    }
    observer.on_end(setup.streams->horizon);
}

namespace {

DriverSetup make_pair_setup(const ScenarioConfig& config, PairKind pair,
                            const EventStreamSet& streams) {
    DriverSetup setup;
    setup.streams = &streams;
    switch (pair) {
        case PairKind::OrUb:
            if (config.model != Model::Or) {
                throw InvalidParameterError(
                    "bound pairing is defined for the threshold model only");
            }
            setup.primary = n_model_or(config.threshold);
            setup.secondary = n_model_ub(config.threshold);
            break;
        case PairKind::OrMm1:
            setup.primary = config.discipline();
            setup.with_mm1 = true;
            break;
    }
    return setup;
}

/// Materializes every sample, with id sets for OrUb pairs.
class MaterializeObserver : public CoupledObserver {
public:
    explicit MaterializeObserver(CoupledTrace& out) : out_(out) {}

    void on_sample(const SampleContext& ctx) override {
        TraceSample s;
        s.time = ctx.time;
        s.event_kind = ctx.kind;
        s.primary = ctx.primary->counters();
        if (ctx.secondary != nullptr) s.secondary = ctx.secondary->counters();
        if (out_.has_sets) {
            s.primary_sets = snapshot_sets(*ctx.primary);
            if (ctx.secondary != nullptr) s.secondary_sets = snapshot_sets(*ctx.secondary);
        }
        if (ctx.lb_server2 != nullptr) s.mm1_n2 = ctx.lb_server2->n_jobs;
        if (ctx.lb_total != nullptr) s.mm1_n = ctx.lb_total->n_jobs;
        out_.samples.push_back(std::move(s));
    }

private:
    CoupledTrace& out_;
};

}  // namespace

void run_coupled(const ScenarioConfig& config, PairKind pair, CoupledObserver& observer) {
    config.validate();
    const EventStreamSet streams =
        build_coupled_streams(config.rates(), config.horizon, config.master_seed);
    run_events(make_pair_setup(config, pair, streams), observer);
}

CoupledTrace run_coupled(const ScenarioConfig& config, PairKind pair) {
    CoupledTrace trace;
    trace.pair = pair;
    trace.has_sets = (pair == PairKind::OrUb);
    MaterializeObserver obs(trace);
    run_coupled(config, pair, obs);
    return trace;
}

CoupledTrace run_decoupled_or_ub(const ScenarioConfig& config) {
    config.validate();
    if (config.model != Model::Or) {
        throw InvalidParameterError("bound pairing is defined for the threshold model only");
    }
    const EventStreamSet streams_a =
        build_coupled_streams(config.rates(), config.horizon, config.master_seed);
    const EventStreamSet streams_b = build_coupled_streams(
        config.rates(), config.horizon, derive_seed(config.master_seed, kSaltSecondArm));

    SystemState or_system(n_model_or(config.threshold));
    SystemState ub_system(n_model_ub(config.threshold));
    EventMerger merger_a(streams_a);
    EventMerger merger_b(streams_b);
    JobId next_a = 1;
    JobId next_b = 1;

    CoupledTrace trace;
    trace.pair = PairKind::OrUb;
    trace.has_sets = true;
    trace.decoupled = true;

    auto sample = [&](double time, std::optional<EventKind> kind) {
        TraceSample s;
        s.time = time;
        s.event_kind = kind;
        s.primary = or_system.counters();
        s.secondary = ub_system.counters();
        s.primary_sets = snapshot_sets(or_system);
        s.secondary_sets = snapshot_sets(ub_system);
        trace.samples.push_back(std::move(s));
    };
    sample(0.0, std::nullopt);

    auto apply_one = [&](EventMerger& merger, SystemState& system, JobId& next_id,
                         const Event& ev) {
        Job job;
        const Job* arrival = nullptr;
        if (is_arrival(ev.kind)) {
            job = Job{next_id++, arrival_type(ev.kind), ev.time};
            arrival = &job;
            const double t = system.discipline().threshold[type_index(job.type)];
            if (t > 0.0) merger.schedule_expiry(job.arrival_time + t, job.id);
        }
        system.apply(ev, arrival);
        sample(ev.time, ev.kind);
    };

    std::optional<Event> pending_a = merger_a.next();
    std::optional<Event> pending_b = merger_b.next();
    while (pending_a.has_value() || pending_b.has_value()) {
        const bool take_a = pending_a.has_value() &&
            (!pending_b.has_value() || pending_a->time <= pending_b->time);
        if (take_a) {
            apply_one(merger_a, or_system, next_a, *pending_a);
            pending_a = merger_a.next();
        } else {
            apply_one(merger_b, ub_system, next_b, *pending_b);
            pending_b = merger_b.next();
        }
    }
    return trace;
}

namespace {

void require_pair(const CoupledTrace& trace, PairKind want, const char* what) {
    if (trace.pair != want) {
        throw InvalidTraceError(std::string(what) + " needs a " +
                                (want == PairKind::OrUb ? "bound-pair" : "companion-pair") +
                                " trace");
    }
}

void check_counter(std::vector<ViolationReport>& out, const TraceSample& s,
                   Inequality iq, long lhs, long rhs) {
    if (lhs > rhs) out.push_back({s.time, iq, lhs, rhs, s.event_kind});
}

/// Number of ids in `a` missing from `b`; both ascending.
long missing_count(const std::vector<JobId>& a, const std::vector<JobId>& b) {
    long missing = 0;
    std::size_t ib = 0;
    for (JobId id : a) {
        while (ib < b.size() && b[ib] < id) ++ib;
        if (ib == b.size() || b[ib] != id) ++missing;
    }
    return missing;
}

}  // namespace

std::vector<ViolationReport> check_dominance(const CoupledTrace& trace) {
    require_pair(trace, PairKind::OrUb, "dominance check");
    std::vector<ViolationReport> out;
    for (const TraceSample& s : trace.samples) {
        const Counters& a = s.primary;
        const Counters& b = s.secondary;
        check_counter(out, s, Inequality::Q1Minus, a.q1_minus, b.q1_minus);
        check_counter(out, s, Inequality::Q1Plus, a.q1_plus, b.q1_plus);
        check_counter(out, s, Inequality::Q2, a.q2, b.q2);
        check_counter(out, s, Inequality::Cust1, a.q1() + a.r1, b.q1() + b.r1);
        check_counter(out, s, Inequality::Serv2, a.r2 + a.r3, b.r2 + b.r3);
    }
    return out;
}

std::vector<ViolationReport> check_subsets(const CoupledTrace& trace) {
    require_pair(trace, PairKind::OrUb, "containment check");
    if (!trace.has_sets) {
        throw InvalidTraceError("containment check needs recorded id sets");
    }
    std::vector<ViolationReport> out;
    auto check = [&out](const TraceSample& s, Inequality iq, const std::vector<JobId>& a,
                        const std::vector<JobId>& b) {
        if (std::includes(b.begin(), b.end(), a.begin(), a.end())) return;
        out.push_back({s.time, iq, missing_count(a, b), 0, s.event_kind});
    };
    for (const TraceSample& s : trace.samples) {
        check(s, Inequality::Subset1Minus, s.primary_sets.q1_minus, s.secondary_sets.q1_minus);
        check(s, Inequality::Subset1Plus, s.primary_sets.q1_plus, s.secondary_sets.q1_plus);
        check(s, Inequality::Subset2, s.primary_sets.q2, s.secondary_sets.q2);
    }
    return out;
}

std::vector<ViolationReport> check_lower_bounds(const CoupledTrace& trace) {
    require_pair(trace, PairKind::OrMm1, "lower-bound check");
    std::vector<ViolationReport> out;
    for (const TraceSample& s : trace.samples) {
        const long total = s.primary.in_system();
        check_counter(out, s, Inequality::LowerBoundN2, s.mm1_n2, total);
        check_counter(out, s, Inequality::LowerBoundN, s.mm1_n, total);
    }
    return out;
}

StreamingChecker::StreamingChecker(PairKind pair) : StreamingChecker(pair, Options{}) {}

StreamingChecker::StreamingChecker(PairKind pair, Options options)
    : pair_(pair), options_(options) {}

void StreamingChecker::report(const SampleContext& ctx, Inequality iq, long lhs, long rhs) {
    ++summary_.violations;
    if (summary_.first_reports.size() < options_.max_reports) {
        summary_.first_reports.push_back({ctx.time, iq, lhs, rhs, ctx.kind});
    }
}

namespace {

/// Front/back ids of the waiting set that is split into a past-threshold
/// segment (older) and a below-threshold segment (newer).
struct IdRange {
    bool empty = true;
    JobId front = 0;
    JobId back = 0;
};

IdRange queue_range(const std::deque<Job>& older, const std::deque<Job>& newer) {
    IdRange r;
    if (older.empty() && newer.empty()) return r;
    r.empty = false;
    r.front = older.empty() ? newer.front().id : older.front().id;
    r.back = newer.empty() ? older.back().id : newer.back().id;
    return r;
}

IdRange queue_range(const std::deque<Job>& only) {
    static const std::deque<Job> kEmpty;
    return queue_range(only, kEmpty);
}

/// Containment of contiguous segments of one shared arrival order.
bool range_subset(const IdRange& a, const IdRange& b) {
    if (a.empty) return true;
    if (b.empty) return false;
    return b.front <= a.front && a.back <= b.back;
}

}  // namespace

void StreamingChecker::on_sample(const SampleContext& ctx) {
    ++summary_.samples;
    const Counters a = ctx.primary->counters();

    const long waiting = a.waiting();
    const long total = a.in_system();
    if (!(waiting <= total && total <= waiting + 2)) ++summary_.sandwich_violations;

    if (pair_ == PairKind::OrUb) {
        const Counters b = ctx.secondary->counters();
        const long waiting_b = b.waiting();
        const long total_b = b.in_system();
        if (!(waiting_b <= total_b && total_b <= waiting_b + 2)) {
            ++summary_.sandwich_violations;
        }
        if (a.q1_minus > b.q1_minus) report(ctx, Inequality::Q1Minus, a.q1_minus, b.q1_minus);
        if (a.q1_plus > b.q1_plus) report(ctx, Inequality::Q1Plus, a.q1_plus, b.q1_plus);
        if (a.q2 > b.q2) report(ctx, Inequality::Q2, a.q2, b.q2);
        if (a.q1() + a.r1 > b.q1() + b.r1) {
            report(ctx, Inequality::Cust1, a.q1() + a.r1, b.q1() + b.r1);
        }
        if (a.r2 + a.r3 > b.r2 + b.r3) report(ctx, Inequality::Serv2, a.r2 + a.r3, b.r2 + b.r3);

        const SystemState& p = *ctx.primary;
        const SystemState& s = *ctx.secondary;
        if (!range_subset(queue_range(p.below(JobType::Type1)),
                          queue_range(s.below(JobType::Type1)))) {
            report(ctx, Inequality::Subset1Minus, 1, 0);
        }
        if (!range_subset(queue_range(p.past(JobType::Type1)),
                          queue_range(s.past(JobType::Type1)))) {
            report(ctx, Inequality::Subset1Plus, 1, 0);
        }
        if (!range_subset(queue_range(p.past(JobType::Type2), p.below(JobType::Type2)),
                          queue_range(s.past(JobType::Type2), s.below(JobType::Type2)))) {
            report(ctx, Inequality::Subset2, 1, 0);
        }
    } else {
        if (ctx.lb_server2->n_jobs > total) {
            report(ctx, Inequality::LowerBoundN2, ctx.lb_server2->n_jobs, total);
        }
        if (ctx.lb_total->n_jobs > total) {
            report(ctx, Inequality::LowerBoundN, ctx.lb_total->n_jobs, total);
        }
    }
}

}  // namespace nqsim
