#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "nqsim/errors.hpp"
#include "nqsim/stability.hpp"

using namespace nqsim;

namespace {

ScenarioConfig make_config(double l1, double l2, double t, double horizon,
                           std::uint64_t seed) {
    ScenarioConfig c;
    c.lambda1 = l1;
    c.lambda2 = l2;
    c.mu1 = 1.0;
    c.mu2 = 1.0;
    c.threshold = t;
    c.horizon = horizon;
    c.master_seed = seed;
    c.model = Model::Or;
    return c;
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("region membership is the strict two-condition conjunction") {
    CHECK(inside_stability_region(0.4, 0.4, 1.0, 1.0));
    CHECK(inside_stability_region(2.0, 0.5, 2.0, 1.0));
    CHECK(!inside_stability_region(1.5, 0.6, 1.0, 1.0));   // sum too high
    CHECK(!inside_stability_region(0.1, 1.2, 1.0, 1.0));   // queue-2 overload
    CHECK(!inside_stability_region(1.0, 1.0, 1.0, 1.0));   // boundary: sum equal
    CHECK(!inside_stability_region(0.1, 1.0, 1.5, 1.0));   // boundary: l2 == mu2
}

TEST_CASE("well-inside parameters classify as stable evidence") {
    const DriftEstimate d = estimate_drift(make_config(0.4, 0.4, 1.0, 2e4, 11), 3);
    CHECK(d.classification == DriftClass::StableEvidence);
    CHECK(!d.degenerate);
}

TEST_CASE("overloaded second queue drifts at its net input rate") {
    // Server 2 is eventually always busy, so queue 2 grows at 1.5 - 1.
    DriftOptions opts;
    opts.counter = DriftCounter::Queue2;
    const DriftEstimate d =
        estimate_drift(make_config(0.1, 1.5, 1.0, 1e5, 17), 3, opts);
    CHECK(d.classification == DriftClass::UnstableEvidence);
    CHECK(d.slope == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("fully saturated system drifts at the pooled net input rate") {
    const DriftEstimate d = estimate_drift(make_config(2.5, 0.5, 1.0, 1e5, 17), 3);
    CHECK(d.classification == DriftClass::UnstableEvidence);
    CHECK(d.slope == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("a run with no arrivals is flagged degenerate and reads as stable") {
    const DriftEstimate d = estimate_drift(make_config(1e-9, 1e-9, 1.0, 1e3, 5), 3);
    CHECK(d.degenerate);
    CHECK(d.classification == DriftClass::StableEvidence);
    CHECK(d.slope == 0.0);
}

TEST_CASE("drift estimation is deterministic in the master seed") {
    const DriftEstimate a = estimate_drift(make_config(0.7, 0.7, 1.0, 2e4, 23), 4);
    const DriftEstimate b = estimate_drift(make_config(0.7, 0.7, 1.0, 2e4, 23), 4);
    CHECK(a.slope == b.slope);
    CHECK(a.slope_stderr == b.slope_stderr);
    CHECK(a.classification == b.classification);
}

TEST_CASE("drift estimation validates its inputs") {
    CHECK_THROWS_AS((void)estimate_drift(make_config(0.4, 0.4, 1.0, 2e4, 1), 2),
                    InvalidParameterError);  // needs >= 3 replications
    ScenarioConfig bad = make_config(0.4, 0.4, 1.0, 2e4, 1);
    bad.lambda1 = -1.0;
    CHECK_THROWS_AS((void)estimate_drift(bad, 3), InvalidParameterError);
}

TEST_CASE("classifications flip across the queue-2 overload line") {
    SweepConfig sweep;
    sweep.grid = {{0.1, 0.5}, {0.1, 1.5}};
    sweep.thresholds = {1.0};
    sweep.replications = 3;
    sweep.horizon = 2e4;
    sweep.master_seed = 2;
    const std::vector<RegionPoint> points = sweep_region(sweep);
    // Two explicit points on the lambda1 = 0.1 column straddling the
    // lambda2 = mu2 line.
    REQUIRE(points.size() == 2);
    for (const RegionPoint& p : points) {
        REQUIRE(p.drift.size() == 1);
        REQUIRE(p.lambda1 == 0.1);
        if (p.lambda2 == 0.5) {
            CHECK(p.inside_theory);
            CHECK(p.drift[0].classification == DriftClass::StableEvidence);
        } else {
            REQUIRE(p.lambda2 == 1.5);
            CHECK(!p.inside_theory);
            CHECK(p.drift[0].classification == DriftClass::UnstableEvidence);
        }
    }
}

TEST_CASE("classification does not depend on the threshold") {
    SweepConfig sweep;
    sweep.grid = {{0.4, 0.4}};
    sweep.thresholds = {0.1, 1.0, 10.0};
    sweep.replications = 3;
    sweep.horizon = 2e4;
    sweep.master_seed = 6;
    const std::vector<RegionPoint> points = sweep_region(sweep);
    REQUIRE(points.size() == 1);
    REQUIRE(points[0].drift.size() == 3);
    CHECK(points[0].drift[0].classification == points[0].drift[1].classification);
    CHECK(points[0].drift[1].classification == points[0].drift[2].classification);
    CHECK(points[0].inside_theory);
}

TEST_CASE("grid points on a boundary line are rejected") {
    SweepConfig sweep;
    sweep.thresholds = {1.0};
    sweep.replications = 3;
    sweep.horizon = 1e4;
    sweep.grid = {{1.0, 1.0}};  // lambda1 + lambda2 == mu1 + mu2
    CHECK_THROWS_AS((void)sweep_region(sweep), BoundaryPointError);
    sweep.grid = {{0.1, 1.0}};  // lambda2 == mu2
    CHECK_THROWS_AS((void)sweep_region(sweep), BoundaryPointError);
}

TEST_CASE("young-job count matches the Poisson inspection statistics") {
    // Delay-stage occupancy sampled at independent inspection times: mean
    // lambda1 * T, dispersion near 1, and a healthy goodness-of-fit tail.
    ScenarioConfig c = make_config(2.0, 0.5, 0.5, 4e4, 3);
    c.mu1 = 4.0;
    c.mu2 = 4.0;
    c.model = Model::Ub;
    const PastaSummary p = pasta_check(c, 10000);
    CHECK(p.theory_mean == 1.0);
    REQUIRE(p.samples >= 10000);
    const double se = std::sqrt(p.variance / static_cast<double>(p.samples));
    CHECK(std::abs(p.mean - 1.0) <= 3.0 * se);
    CHECK(p.dispersion() >= 0.9);
    CHECK(p.dispersion() <= 1.1);
    CHECK(p.p_value > 0.01);
}

TEST_CASE("vanishing arrival rate leaves the young-job count at zero") {
    ScenarioConfig c = make_config(1e-6, 0.5, 0.5, 1e4, 4);
    c.model = Model::Ub;
    const PastaSummary p = pasta_check(c, 1000);
    CHECK(p.mean == 0.0);
    CHECK(p.variance == 0.0);
    CHECK(p.dispersion() == 1.0);  // convention for an empty mean
}

TEST_CASE("inspection sampling refuses runs whose warm-up swallows the horizon") {
    // Warm-up is max(20% horizon, 10 T); T = 100 with horizon 500 leaves
    // nothing to sample.
    ScenarioConfig c = make_config(2.0, 0.5, 100.0, 500.0, 1);
    c.model = Model::Ub;
    CHECK_THROWS_AS((void)pasta_check(c, 1000), InsufficientDataError);
}

TEST_CASE("delayed-system waiting count matches plain FCFS within confidence intervals") {
    for (double t : {0.1, 1.0, 10.0}) {
        const EquivalenceSummary s =
            fcfs_equivalence_check(make_config(0.4, 0.4, t, 3e4, 15), 8);
        CAPTURE(t);
        CHECK(s.intervals_overlap);
        CHECK(s.delayed.replications == 8);
        CHECK(s.fcfs.replications == 8);
        CHECK(s.delayed.ci_half > 0.0);
        CHECK(s.fcfs.ci_half > 0.0);
    }
}

TEST_CASE("waiting-count comparison refuses unstable parameters") {
    CHECK_THROWS_AS((void)fcfs_equivalence_check(make_config(0.1, 1.5, 1.0, 1e4, 1), 4),
                    UnstableParametersError);
    CHECK_THROWS_AS((void)fcfs_equivalence_check(make_config(0.4, 0.4, 1.0, 1e4, 1), 1),
                    InvalidParameterError);
}

}  // TEST_SUITE
