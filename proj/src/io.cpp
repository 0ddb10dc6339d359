#include "nqsim/io.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>

namespace nqsim {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string event_kind_label(const std::optional<EventKind>& kind) {
    if (!kind.has_value()) return "init";
    return std::string(to_string(*kind));
}

namespace {

void write_counter_cells(std::ostream& os, const Counters& c) {
    os << ',' << c.q1_minus << ',' << c.q1_plus << ',' << c.q2 << ',' << c.r1 << ',' << c.r2
       << ',' << c.r3;
}

}  // namespace

void write_trace_csv(std::ostream& os, const CoupledTrace& trace) {
    os << "time,event_kind,or_q1_minus,or_q1_plus,or_q2,or_r1,or_r2,or_r3";
    if (trace.pair == PairKind::OrUb) {
        os << ",ub_q1_minus,ub_q1_plus,ub_q2,ub_r1,ub_r2,ub_r3";
    } else {
        os << ",mm1_n2,mm1_n";
    }
    os << '\n';
    for (const TraceSample& s : trace.samples) {
        os << format_double(s.time) << ',' << event_kind_label(s.event_kind);
        write_counter_cells(os, s.primary);
        if (trace.pair == PairKind::OrUb) {
            write_counter_cells(os, s.secondary);
        } else {
            os << ',' << s.mm1_n2 << ',' << s.mm1_n;
        }
        os << '\n';
    }
}

namespace {

ordered_json violation_json(const ViolationReport& r) {
    ordered_json j;
    j["time"] = r.time;
    j["inequality"] = to_string(r.inequality);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["event_kind"] = event_kind_label(r.event_kind);
    return j;
}

}  // namespace

void write_violations_jsonl(std::ostream& os, std::span<const ViolationReport> reports) {
    for (const ViolationReport& r : reports) {
        os << violation_json(r).dump() << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<RegionPoint>& points,
                     const std::vector<double>& thresholds) {
    os << "lambda1,lambda2,T,inside_theory,slope,slope_stderr,classification\n";
    for (const RegionPoint& p : points) {
        for (std::size_t ti = 0; ti < p.drift.size() && ti < thresholds.size(); ++ti) {
            const DriftEstimate& d = p.drift[ti];
            os << format_double(p.lambda1) << ',' << format_double(p.lambda2) << ','
               << format_double(thresholds[ti]) << ',' << (p.inside_theory ? "true" : "false")
               << ',' << format_double(d.slope) << ',' << format_double(d.slope_stderr) << ','
               << to_string(d.classification) << '\n';
        }
    }
}

namespace {

ordered_json job_records_json(const std::vector<JobServiceRecord>& records) {
    ordered_json list = ordered_json::array();
    for (const JobServiceRecord& r : records) {
        ordered_json j;
        j["job"] = r.job;
        j["start"] = r.start;
        j["server"] = r.server;
        j["departure"] = r.departure;
        list.push_back(std::move(j));
    }
    return list;
}

}  // namespace

void write_replay_json(std::ostream& os, const Table1Replay& replay) {
    ordered_json j;
    j["or_records"] = job_records_json(replay.or_records);
    j["ub_records"] = job_records_json(replay.ub_records);
    ordered_json intervals = ordered_json::array();
    for (const auto& [from, to] : replay.q2_violation_intervals) {
        intervals.push_back(ordered_json::array({from, to}));
    }
    j["q2_violation_intervals"] = std::move(intervals);
    os << j.dump(2) << '\n';
}

void write_search_jsonl(std::ostream& os, std::span<const SearchResult> results) {
    for (const SearchResult& r : results) {
        ordered_json j;
        j["seed"] = r.seed;
        if (r.violation.has_value()) {
            j["violation"] = violation_json(*r.violation);
        } else {
            j["violation"] = nullptr;
        }
        os << j.dump() << '\n';
    }
}

void write_pasta_json(std::ostream& os, const PastaSummary& s) {
    ordered_json j;
    j["samples"] = s.samples;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["theory_mean"] = s.theory_mean;
    j["dispersion"] = s.dispersion();
    j["chi_square"] = s.chi_square;
    j["dof"] = s.dof;
    j["p_value"] = s.p_value;
    os << j.dump(2) << '\n';
}

void write_equivalence_json(std::ostream& os, const EquivalenceSummary& s) {
    ordered_json j;
    j["delayed_mean"] = s.delayed.mean;
    j["delayed_ci_half"] = s.delayed.ci_half;
    j["fcfs_mean"] = s.fcfs.mean;
    j["fcfs_ci_half"] = s.fcfs.ci_half;
    j["replications"] = s.delayed.replications;
    j["intervals_overlap"] = s.intervals_overlap;
    os << j.dump(2) << '\n';
}

}  // namespace nqsim
