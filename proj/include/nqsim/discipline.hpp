#pragma once

#include <array>
#include <string_view>

#include "nqsim/job.hpp"

namespace nqsim {

/// When a server may take a waiting job of a given type.
enum class Eligibility {
    Always,          // any waiting job of the type, regardless of age
    AfterThreshold,  // only once the job's waiting time has reached the
                     // type's threshold
    Never,
};

enum class DisciplineKind { NModelOr, NModelUb, NModelFcfs, XModelOr, XModelUb };

/// How a freed server ranks the waiting jobs it may take.
///
/// Arrival: take the eligible job that has waited longest since arrival.
/// Eligibility: rank every job by arrival time plus its type's threshold,
/// i.e. by the moment it became (or will become) eligible. For a variant
/// whose delayed types are ineligible at both servers this makes the system
/// behave as a pure delay stage feeding a first-come-first-served stage, so
/// its past-threshold occupancy matches the zero-threshold system exactly.
/// The two rankings provably differ: the arrival ranking is the one under
/// which the coupled pathwise inequalities hold, while the eligibility
/// ranking is the one under which the waiting-count distribution matches
/// plain FCFS.
enum class ServiceOrder { Arrival, Eligibility };

/// Service rules for one system: a per-(server, type) eligibility matrix
/// plus the per-type waiting-time threshold that drives expiry timers and
/// the below/past queue split. threshold[i] == 0 means type i+1 has no
/// delay stage and its arrivals enter the past-threshold queue directly.
struct DisciplineSpec {
    DisciplineKind kind = DisciplineKind::NModelFcfs;
    // elig[server][type], both 0-based.
    std::array<std::array<Eligibility, 2>, 2> elig{};
    std::array<double, 2> threshold{0.0, 0.0};
    ServiceOrder order = ServiceOrder::Arrival;

    bool has_threshold(JobType t) const { return threshold[type_index(t)] > 0.0; }

    /// Ranking key for a waiting job: arrival time, or the moment the job
    /// becomes eligible when this spec ranks by eligibility.
    double rank_key(const Job& job) const {
        double key = job.arrival_time;
        if (order == ServiceOrder::Eligibility) {
            key += threshold[type_index(job.type)];
        }
        return key;
    }
};

/// N-model with the waiting-time threshold on the diagonal: server 1 takes
/// any waiting type-1 job, server 2 takes type-2 jobs freely and type-1
/// jobs only once aged at least T.
DisciplineSpec n_model_or(double t);

/// Bounding variant: type-1 jobs are ineligible at both servers until aged
/// at least T. The default arrival ranking is the one used for the coupled
/// pathwise comparisons; the eligibility ranking is used when comparing
/// waiting-count statistics against the plain FCFS system.
DisciplineSpec n_model_ub(double t, ServiceOrder order = ServiceOrder::Arrival);

/// Plain FCFS N-model (zero-threshold semantics). Expiry events are
/// invalid for this discipline.
DisciplineSpec n_model_fcfs();

/// X-model: each server takes its own type freely and the other type only
/// past that type's threshold (t1 for type 1, t2 for type 2).
DisciplineSpec x_model_or(double t1, double t2);

/// X-model bounding variant: type-k jobs are ineligible at both servers
/// until aged at least t_k.
DisciplineSpec x_model_ub(double t1, double t2);

/// X-model with both thresholds zero (full-compatibility FCFS).
DisciplineSpec x_model_fcfs();

std::string_view to_string(DisciplineKind k);

}  // namespace nqsim
