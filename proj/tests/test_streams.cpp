#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "nqsim/errors.hpp"
#include "nqsim/seeds.hpp"
#include "nqsim/streams.hpp"

using namespace nqsim;

TEST_SUITE("streams") {

TEST_CASE("zero rate produces no events") {
    CHECK(sample_poisson_stream(0.0, 100.0, 42).empty());
}

TEST_CASE("jump times are strictly increasing and inside the horizon") {
    const auto jumps = sample_poisson_stream(3.0, 50.0, 7);
    REQUIRE(!jumps.empty());
    CHECK(jumps.front() > 0.0);
    CHECK(jumps.back() <= 50.0);
    for (std::size_t i = 0; i + 1 < jumps.size(); ++i) {
        CHECK(jumps[i] < jumps[i + 1]);
    }
}

TEST_CASE("mean inter-arrival gap matches the rate at long horizons") {
    // Law of large numbers: at rate 1 over 1e5 time units the average gap
    // between consecutive jumps converges to 1.
    const auto jumps = sample_poisson_stream(1.0, 1e5, 12345);
    REQUIRE(jumps.size() > 50000);
    const double mean_gap = jumps.back() / static_cast<double>(jumps.size());
    CHECK(mean_gap == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("event counts match the Poisson mean over many seeds") {
    // rate 2 on (0,5] gives Poisson(10) counts; the mean over 1e4 seeds
    // must land within 3 standard errors of 10.
    const int reps = 10000;
    double total = 0.0;
    for (int i = 0; i < reps; ++i) {
        total += static_cast<double>(
            sample_poisson_stream(2.0, 5.0, derive_seed(99, i)).size());
    }
    const double mean = total / reps;
    const double stderr3 = 3.0 * std::sqrt(10.0 / reps);
    CHECK(std::abs(mean - 10.0) <= stderr3);
}

TEST_CASE("identical seed reproduces the identical sequence") {
    const auto a = sample_poisson_stream(1.7, 200.0, 5551);
    const auto b = sample_poisson_stream(1.7, 200.0, 5551);
    CHECK(a == b);
    const auto c = sample_poisson_stream(1.7, 200.0, 5552);
    CHECK(a != c);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(sample_poisson_stream(-1.0, 10.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(sample_poisson_stream(1.0, 0.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(sample_poisson_stream(1.0, -5.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(build_coupled_streams({0.0, 1.0, 1.0, 1.0}, 10.0, 1),
                    InvalidParameterError);
    CHECK_THROWS_AS(build_coupled_streams({1.0, 1.0, 1.0, 1.0}, 0.0, 1),
                    InvalidParameterError);
}

TEST_CASE("coupled stream sets are deterministic field by field") {
    const StreamRates rates{0.4, 0.4, 1.0, 1.0};
    const EventStreamSet s1 = build_coupled_streams(rates, 1000.0, 31);
    const EventStreamSet s2 = build_coupled_streams(rates, 1000.0, 31);
    CHECK(s1.a1_jumps == s2.a1_jumps);
    CHECK(s1.a2_jumps == s2.a2_jumps);
    CHECK(s1.z1_jumps == s2.z1_jumps);
    CHECK(s1.z2_jumps == s2.z2_jumps);
    CHECK(s1.master_seed == 31);
    CHECK(s1.horizon == 1000.0);
}

TEST_CASE("substreams are independent: changing one rate leaves the others") {
    const EventStreamSet base = build_coupled_streams({0.4, 0.4, 1.0, 1.0}, 1000.0, 31);
    const EventStreamSet bumped = build_coupled_streams({0.4, 0.4, 1.0, 2.0}, 1000.0, 31);
    CHECK(base.a1_jumps == bumped.a1_jumps);
    CHECK(base.a2_jumps == bumped.a2_jumps);
    CHECK(base.z1_jumps == bumped.z1_jumps);
    CHECK(base.z2_jumps != bumped.z2_jumps);
}

}  // TEST_SUITE
