#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "nqsim/stability.hpp"
#include "nqsim/trace.hpp"
#include "nqsim/x_model.hpp"

namespace nqsim {

/// Fixed numeric formatting for all text artifacts: 12 significant digits,
/// locale-independent, so replays round-trip.
std::string format_double(double v);

/// Event-kind column value; the initial time-zero sample prints as "init".
std::string event_kind_label(const std::optional<EventKind>& kind);

/// One row per sample. OrUb pairs emit the six counters of both systems
/// (or_* then ub_* columns); OrMm1 pairs emit the or_* counters plus the two
/// companion counts (mm1_n2, mm1_n).
void write_trace_csv(std::ostream& os, const CoupledTrace& trace);

/// Line-delimited JSON, one violation per line with keys time, inequality,
/// lhs, rhs, event_kind.
void write_violations_jsonl(std::ostream& os, std::span<const ViolationReport> reports);

/// One row per (grid point, threshold): lambda1, lambda2, T, inside_theory,
/// slope, slope_stderr, classification.
void write_sweep_csv(std::ostream& os, const std::vector<RegionPoint>& points,
                     const std::vector<double>& thresholds);

/// JSON report of the scripted counterexample replay: per-job service
/// records of both systems plus the type-2 violation intervals.
void write_replay_json(std::ostream& os, const Table1Replay& replay);

/// Line-delimited JSON, one search seed per line (seed plus the earliest
/// violation when one was found).
void write_search_jsonl(std::ostream& os, std::span<const SearchResult> results);

/// JSON report of a distribution check.
void write_pasta_json(std::ostream& os, const PastaSummary& summary);

/// JSON report of a two-arm mean comparison.
void write_equivalence_json(std::ostream& os, const EquivalenceSummary& summary);

}  // namespace nqsim
