#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nqsim/scenario.hpp"

namespace nqsim {

enum class DriftClass { StableEvidence, UnstableEvidence, Inconclusive };

const char* to_string(DriftClass c);

/// Which counter the drift regression tracks.
enum class DriftCounter { TotalWaiting, Queue2 };

struct DriftEstimate {
    double slope = 0.0;         ///< jobs per time unit
    double slope_stderr = 0.0;  ///< across replications
    DriftClass classification = DriftClass::Inconclusive;
    bool degenerate = false;  ///< every window of every replication was empty
};

struct DriftOptions {
    int windows = 100;        ///< regression points per replication
    double epsilon0 = 0.01;   ///< tolerance floor, jobs per time unit
    DriftCounter counter = DriftCounter::TotalWaiting;
};

/// Regresses windowed time-averages of the selected queue counter against
/// window midpoints, one slope per replication (seeds derived from the
/// config's master seed); classifies the mean slope against
/// eps = 3 * stderr + epsilon0. Requires replications >= 3.
DriftEstimate estimate_drift(const ScenarioConfig& config, int replications,
                             const DriftOptions& options = {});

/// Strict stability-region membership: lambda1+lambda2 < mu1+mu2 and
/// lambda2 < mu2.
bool inside_stability_region(double lambda1, double lambda2, double mu1, double mu2);

struct RegionPoint {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool inside_theory = false;
    std::vector<DriftEstimate> drift;  ///< one entry per sweep threshold
};

struct SweepConfig {
    std::vector<std::pair<double, double>> grid;  ///< (lambda1, lambda2) points
    double mu1 = 1.0;
    double mu2 = 1.0;
    std::vector<double> thresholds;
    int replications = 3;
    double horizon = 0.0;
    std::uint64_t master_seed = 1;
    DriftOptions drift;
};

/// One drift estimate per (grid point, threshold); points and thresholds run
/// in parallel. Throws BoundaryPointError when a grid point lies exactly on
/// lambda1+lambda2 = mu1+mu2 or lambda2 = mu2.
std::vector<RegionPoint> sweep_region(const SweepConfig& config);

struct PastaSummary {
    std::size_t samples = 0;
    double mean = 0.0;
    double variance = 0.0;
    double theory_mean = 0.0;  ///< lambda1 * threshold
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 1.0;
    double dispersion() const { return mean > 0.0 ? variance / mean : 1.0; }
};

/// Runs the delayed-eligibility bound system and samples its young type-1
/// count at independent Poisson inspection times after a warm-up of
/// max(20% of horizon, 10 * threshold); compares the sample distribution
/// against Poisson(lambda1 * threshold). The inspection rate is sized so the
/// post-warm-up window yields about sample_count samples.
PastaSummary pasta_check(const ScenarioConfig& config, std::size_t sample_count);

struct ArmEstimate {
    double mean = 0.0;
    double ci_half = 0.0;
    int replications = 0;
};

struct EquivalenceSummary {
    ArmEstimate delayed;  ///< bound system, time-average of aged type-1 + type-2 waiting
    ArmEstimate fcfs;     ///< plain FCFS run, same statistic
    bool intervals_overlap = false;
};

/// Compares stationary waiting-count means of the bound system against the
/// plain FCFS variant on independent seeds, 95% confidence intervals per arm.
/// Throws UnstableParametersError outside the stability region.
EquivalenceSummary fcfs_equivalence_check(const ScenarioConfig& config, int replications);

}  // namespace nqsim
