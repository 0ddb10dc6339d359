#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nqsim/scenario.hpp"
#include "nqsim/streams.hpp"
#include "nqsim/system.hpp"
#include "nqsim/trace.hpp"

namespace nqsim {

/// A fully scripted run: explicit arrival times with types and explicit
/// potential-completion jump times instead of sampled streams.
struct ScriptedRun {
    std::vector<std::pair<double, JobType>> arrivals;  ///< nondecreasing times
    std::vector<double> z1_jumps;  ///< strictly increasing
    std::vector<double> z2_jumps;  ///< strictly increasing
    double t1 = 0.0;               ///< type-1 eligibility threshold
    double t2 = 0.0;               ///< type-2 eligibility threshold
    double horizon = 0.0;

    /// Throws InvalidParameterError on unordered lists, times outside
    /// [0, horizon], or negative thresholds.
    void validate() const;

    /// Jump lists split per stream, ready for the event merger.
    EventStreamSet to_streams() const;
};

/// Service summary of one job, in arrival order.
struct JobServiceRecord {
    JobId job = kNoJob;
    double start = -1.0;      ///< -1 when never started within the horizon
    int server = 0;           ///< 1-based; 0 when never started
    double departure = -1.0;  ///< -1 when still in service at the horizon
};

/// Runs the scripted X-model pair (thresholded alongside delayed-eligibility
/// bound) and materializes the trace with id sets plus per-job service
/// records for both systems.
struct ScriptedPairResult {
    std::vector<JobServiceRecord> or_records;
    std::vector<JobServiceRecord> ub_records;
    CoupledTrace trace;
};

ScriptedPairResult run_scripted_pair(const ScriptedRun& script);

/// The built-in three-job counterexample script: arrivals (0, type-1),
/// (1, type-2), (2, type-2); z1 jumps {10}; z2 jumps {5, 6}; thresholds
/// t1 = 5, t2 = 1; horizon 12.
ScriptedRun counterexample_script();

struct Table1Replay {
    std::vector<JobServiceRecord> or_records;
    std::vector<JobServiceRecord> ub_records;
    /// Maximal half-open intervals where the thresholded system's type-2
    /// queue count strictly exceeds the bound system's.
    std::vector<std::pair<double, double>> q2_violation_intervals;
    CoupledTrace trace;
};

/// Deterministic replay of the counterexample script.
Table1Replay replay_table1();

/// Outcome of one seed of the randomized counterexample search.
struct SearchResult {
    std::uint64_t seed = 0;
    std::optional<ViolationReport> violation;  ///< earliest, if any
};

/// Dominance reports restricted to the four queue-count comparisons.
///
/// The search deliberately ignores the server-2 busyness comparison: the
/// two-threshold bound system delays even own-type service starts, so that
/// comparison fails the instant the thresholded system serves any job the
/// bound is still holding back. Such failures say nothing about queue-count
/// ordering, which is what the search is after.
std::vector<ViolationReport> queue_count_violations(const CoupledTrace& trace);

/// Runs a coupled X pair per seed and reports the earliest queue-count
/// dominance violation within the horizon, if one occurs (see
/// queue_count_violations for which comparisons participate). Seeds run in
/// parallel.
std::vector<SearchResult> search_violations(const XConfig& config,
                                            const std::vector<std::uint64_t>& seeds);

}  // namespace nqsim
