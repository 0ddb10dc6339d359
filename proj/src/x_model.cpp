#include "nqsim/x_model.hpp"

#include <algorithm>
#include <cmath>

#include "nqsim/coupling.hpp"
#include "nqsim/errors.hpp"
#include "nqsim/parallel.hpp"

namespace nqsim {

namespace {

void require_ordered(const std::vector<double>& xs, double horizon, const char* what) {
    double prev = -1.0;
    for (double x : xs) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw InvalidParameterError(std::string(what) + ": times must be finite and >= 0");
        }
        if (x <= prev) {
            throw InvalidParameterError(std::string(what) + ": times must be strictly increasing");
        }
        if (x > horizon) {
            throw InvalidParameterError(std::string(what) + ": time past the horizon");
        }
        prev = x;
    }
}

}  // namespace

void ScriptedRun::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidParameterError("scripted run needs a positive finite horizon");
    }
    if (t1 < 0.0 || t2 < 0.0 || !std::isfinite(t1) || !std::isfinite(t2)) {
        throw InvalidParameterError("scripted thresholds must be finite and >= 0");
    }
    double prev = -1.0;
    for (const auto& [time, type] : arrivals) {
        (void)type;
        if (!(time >= 0.0) || !std::isfinite(time) || time > horizon) {
            throw InvalidParameterError("scripted arrival time outside [0, horizon]");
        }
        if (time < prev) {
            throw InvalidParameterError("scripted arrivals must be in time order");
        }
        prev = time;
    }
    require_ordered(z1_jumps, horizon, "z1_jumps");
    require_ordered(z2_jumps, horizon, "z2_jumps");
}

EventStreamSet ScriptedRun::to_streams() const {
    validate();
    EventStreamSet streams;
    streams.horizon = horizon;
    streams.master_seed = 0;
    streams.z1_jumps = z1_jumps;
    streams.z2_jumps = z2_jumps;
    for (const auto& [time, type] : arrivals) {
        auto& list = type == JobType::Type1 ? streams.a1_jumps : streams.a2_jumps;
        if (!list.empty() && time <= list.back()) {
            throw InvalidParameterError("scripted arrivals of one type must not collide");
        }
        list.push_back(time);
    }
    return streams;
}

namespace {

std::vector<JobServiceRecord> to_job_records(const ServiceLog& log, std::size_t job_count) {
    std::vector<JobServiceRecord> out(job_count);
    for (std::size_t i = 0; i < job_count; ++i) out[i].job = static_cast<JobId>(i + 1);
    for (const ServiceRecord& r : log.records) {
        if (r.job == kNoJob || r.job > job_count) continue;
        JobServiceRecord& dst = out[r.job - 1];
        dst.start = r.start;
        dst.server = r.server;
        dst.departure = r.departure;
    }
    return out;
}

}  // namespace

ScriptedPairResult run_scripted_pair(const ScriptedRun& script) {
    const EventStreamSet streams = script.to_streams();

    ScriptedPairResult result;
    result.trace.pair = PairKind::OrUb;
    result.trace.has_sets = true;

    class Materialize : public CoupledObserver {
    public:
        explicit Materialize(CoupledTrace& out) : out_(out) {}
        void on_sample(const SampleContext& ctx) override {
            TraceSample s;
            s.time = ctx.time;
            s.event_kind = ctx.kind;
            s.primary = ctx.primary->counters();
            s.secondary = ctx.secondary->counters();
            s.primary_sets = snapshot_sets(*ctx.primary);
            s.secondary_sets = snapshot_sets(*ctx.secondary);
            out_.samples.push_back(std::move(s));
        }

    private:
        CoupledTrace& out_;
    };

    ServiceLog or_log;
    ServiceLog ub_log;
    DriverSetup setup;
    setup.streams = &streams;
    setup.primary = x_model_or(script.t1, script.t2);
    setup.secondary = x_model_ub(script.t1, script.t2);
    Materialize obs(result.trace);
    run_events(setup, obs, &or_log, &ub_log);

    const std::size_t jobs = script.arrivals.size();
    result.or_records = to_job_records(or_log, jobs);
    result.ub_records = to_job_records(ub_log, jobs);
    return result;
}

ScriptedRun counterexample_script() {
    ScriptedRun script;
    script.arrivals = {{0.0, JobType::Type1}, {1.0, JobType::Type2}, {2.0, JobType::Type2}};
    script.z1_jumps = {10.0};
    script.z2_jumps = {5.0, 6.0};
    script.t1 = 5.0;
    script.t2 = 1.0;
    script.horizon = 12.0;
    return script;
}

namespace {

/// Maximal half-open intervals where pred holds, using the convention that
/// sample k's state persists over [t_k, t_{k+1}); zero-length stretches
/// between same-time samples contribute nothing.
template <typename Pred>
std::vector<std::pair<double, double>> violation_intervals(const CoupledTrace& trace,
                                                           double horizon, Pred pred) {
    std::vector<std::pair<double, double>> out;
    bool open = false;
    double start = 0.0;
    for (const TraceSample& s : trace.samples) {
        const bool bad = pred(s);
        if (bad && !open) {
            open = true;
            start = s.time;
        } else if (!bad && open) {
            open = false;
            if (s.time > start) out.emplace_back(start, s.time);
        }
    }
    if (open && horizon > start) out.emplace_back(start, horizon);
    return out;
}

}  // namespace

Table1Replay replay_table1() {
    const ScriptedRun script = counterexample_script();
    ScriptedPairResult pair = run_scripted_pair(script);

    Table1Replay replay;
    replay.or_records = std::move(pair.or_records);
    replay.ub_records = std::move(pair.ub_records);
    replay.q2_violation_intervals = violation_intervals(
        pair.trace, script.horizon,
        [](const TraceSample& s) { return s.primary.q2 > s.secondary.q2; });
    replay.trace = std::move(pair.trace);
    return replay;
}

std::vector<ViolationReport> queue_count_violations(const CoupledTrace& trace) {
    std::vector<ViolationReport> reports = check_dominance(trace);
    std::erase_if(reports, [](const ViolationReport& r) {
        return r.inequality == Inequality::Serv2;
    });
    return reports;
}

std::vector<SearchResult> search_violations(const XConfig& config,
                                            const std::vector<std::uint64_t>& seeds) {
    config.validate();
    std::vector<SearchResult> results(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        const std::uint64_t seed = seeds[i];
        const EventStreamSet streams =
            build_coupled_streams(config.rates(), config.horizon, seed);

        CoupledTrace trace;
        trace.pair = PairKind::OrUb;

        class CountersOnly : public CoupledObserver {
        public:
            explicit CountersOnly(CoupledTrace& out) : out_(out) {}
            void on_sample(const SampleContext& ctx) override {
                TraceSample s;
                s.time = ctx.time;
                s.event_kind = ctx.kind;
                s.primary = ctx.primary->counters();
                s.secondary = ctx.secondary->counters();
                out_.samples.push_back(std::move(s));
            }

        private:
            CoupledTrace& out_;
        };

        DriverSetup setup;
        setup.streams = &streams;
        setup.primary = x_model_or(config.t1, config.t2);
        setup.secondary = x_model_ub(config.t1, config.t2);
        CountersOnly obs(trace);
        run_events(setup, obs);

        results[i].seed = seed;
        std::vector<ViolationReport> reports = queue_count_violations(trace);
        if (!reports.empty()) results[i].violation = reports.front();
    });
    return results;
}

}  // namespace nqsim
