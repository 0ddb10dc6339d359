#pragma once

#include <cstdint>

#include "nqsim/discipline.hpp"
#include "nqsim/streams.hpp"

namespace nqsim {

/// Which single-system model a scenario runs.
enum class Model { Or, Ub, Fcfs, X };

/// Parameters of one N-model scenario. threshold == 0 is permitted only
/// for the FCFS variant.
struct ScenarioConfig {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double threshold = 0.0;
    double horizon = 0.0;
    std::uint64_t master_seed = 1;
    Model model = Model::Or;

    /// Throws InvalidParameterError on nonpositive rates or horizon, or a
    /// zero threshold outside the FCFS variant.
    void validate() const;

    StreamRates rates() const { return {lambda1, lambda2, mu1, mu2}; }

    /// Discipline for `model` (Model::X is not representable here; see
    /// XConfig).
    DisciplineSpec discipline() const;
};

/// Parameters of one X-model scenario: thresholds on both diagonals.
struct XConfig {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double horizon = 0.0;
    std::uint64_t master_seed = 1;

    void validate() const;
    StreamRates rates() const { return {lambda1, lambda2, mu1, mu2}; }
};

}  // namespace nqsim
