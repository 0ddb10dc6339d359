#pragma once

#include <optional>
#include <vector>

#include "nqsim/events.hpp"
#include "nqsim/system.hpp"

namespace nqsim {

/// Which pair of systems a coupled trace records.
enum class PairKind {
    OrUb,   ///< threshold system alongside its delayed-eligibility bound
    OrMm1,  ///< threshold system alongside single-server companions
};

/// Identifiers for the per-sample comparisons a checker can flag.
enum class Inequality {
    Q1Minus,       ///< young type-1 queue count dominance
    Q1Plus,        ///< aged type-1 queue count dominance
    Q2,            ///< type-2 queue count dominance
    Cust1,         ///< type-1 customers at-or-awaiting service dominance
    Serv2,         ///< server-2 busyness dominance
    Subset1Minus,  ///< young type-1 queue id-set containment
    Subset1Plus,   ///< aged type-1 queue id-set containment
    Subset2,       ///< type-2 queue id-set containment
    LowerBoundN2,  ///< single-server companion on the type-2 streams
    LowerBoundN,   ///< single-server companion on the pooled streams
};

const char* to_string(Inequality iq);

/// Sorted job-id snapshots of the three waiting queues.
struct QueueSetIds {
    std::vector<JobId> q1_minus;
    std::vector<JobId> q1_plus;
    std::vector<JobId> q2;
};

/// State of both systems immediately after one event (or at time zero).
struct TraceSample {
    double time = 0.0;
    std::optional<EventKind> event_kind;  ///< empty for the initial sample
    Counters primary;                     ///< threshold system
    Counters secondary;                   ///< bound system (OrUb only)
    QueueSetIds primary_sets;
    QueueSetIds secondary_sets;
    long mm1_n2 = 0;  ///< companion on the type-2 streams (OrMm1 only)
    long mm1_n = 0;   ///< companion on the pooled streams (OrMm1 only)
};

struct CoupledTrace {
    PairKind pair = PairKind::OrUb;
    bool has_sets = false;
    /// True when the two systems were fed independent randomness (negative
    /// control); containment checks then need real id sets.
    bool decoupled = false;
    std::vector<TraceSample> samples;
};

/// One failed per-sample comparison: lhs exceeded rhs (or, for containment,
/// lhs ids were missing from a set that should cover them).
struct ViolationReport {
    double time = 0.0;
    Inequality inequality = Inequality::Q1Minus;
    long lhs = 0;
    long rhs = 0;
    std::optional<EventKind> event_kind;
};

}  // namespace nqsim
