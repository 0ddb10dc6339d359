#pragma once

#include "nqsim/events.hpp"

namespace nqsim {

/// Customer type. Stored 0-based internally; printed 1-based.
enum class JobType : int { Type1 = 0, Type2 = 1 };

inline int type_index(JobType t) { return static_cast<int>(t); }

/// A typed customer. `arrival_time` is immutable; ids are unique per run
/// and assigned in arrival order, so id order equals arrival order.
struct Job {
    JobId id = kNoJob;
    JobType type = JobType::Type1;
    double arrival_time = 0.0;
};

}  // namespace nqsim
