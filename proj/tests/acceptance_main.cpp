// Acceptance gate: end-to-end checks of the library's headline behaviors,
// one pass/fail line per gate. Exits nonzero if any gate fails. Every gate is
// deterministic: all randomness flows from fixed master seeds.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nqsim/cli.hpp"
#include "nqsim/coupling.hpp"
#include "nqsim/parallel.hpp"
#include "nqsim/scenario.hpp"
#include "nqsim/seeds.hpp"
#include "nqsim/stability.hpp"
#include "nqsim/trace.hpp"
#include "nqsim/x_model.hpp"

using namespace nqsim;

namespace {

struct Gate {
    bool ok = false;
    std::string detail;
};

int g_failures = 0;

template <typename Fn>
void run_gate(const char* name, Fn&& fn) {
    Gate g;
    try {
        g = fn();
    } catch (const std::exception& e) {
        g.ok = false;
        g.detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", g.ok ? "PASS" : "FAIL", name, g.detail.c_str());
    std::fflush(stdout);
    if (!g.ok) ++g_failures;
}

struct GridPoint {
    double lambda1, lambda2, mu1, mu2, threshold;
};

// Parameter sets spanning the stability region (first half), queue-2
// overload, total overload, both overloads, and one critically loaded point.
const std::vector<GridPoint>& parameter_grid() {
    static const std::vector<GridPoint> grid = {
        {0.3, 0.3, 1.0, 1.0, 0.5},  {0.6, 0.6, 1.0, 1.0, 1.0},
        {0.9, 0.5, 1.0, 1.0, 2.0},  {1.2, 0.3, 1.0, 1.0, 0.7},
        {0.5, 0.9, 1.0, 1.0, 1.5},  {1.5, 0.2, 1.0, 1.0, 1.0},
        {0.2, 0.2, 0.5, 0.5, 3.0},  {1.0, 1.5, 2.0, 2.0, 0.4},
        {2.0, 1.0, 2.0, 2.0, 1.0},  {0.8, 0.8, 1.0, 1.0, 5.0},
        {1.7, 0.1, 1.0, 1.0, 0.2},  {0.1, 0.95, 1.0, 1.0, 1.0},
        {2.5, 0.5, 1.0, 1.0, 1.0},  {0.1, 1.5, 1.0, 1.0, 1.0},
        {1.8, 1.2, 1.0, 1.0, 0.5},  {2.2, 0.9, 1.0, 1.0, 2.0},
        {0.3, 2.0, 1.0, 1.0, 1.0},  {1.5, 1.5, 1.0, 1.0, 1.0},
        {2.8, 0.1, 1.0, 1.0, 0.5},  {0.5, 1.1, 1.0, 1.0, 1.0},
        {3.0, 0.5, 2.0, 2.0, 0.3},  {0.2, 2.5, 1.0, 2.0, 1.0},
        {2.0, 2.0, 1.5, 1.5, 0.8},  {1.0, 1.0, 1.0, 1.0, 1.0},
    };
    return grid;
}

ScenarioConfig grid_config(const GridPoint& p, std::uint64_t seed) {
    ScenarioConfig c;
    c.lambda1 = p.lambda1;
    c.lambda2 = p.lambda2;
    c.mu1 = p.mu1;
    c.mu2 = p.mu2;
    c.threshold = p.threshold;
    c.horizon = 1e4;
    c.master_seed = seed;
    c.model = Model::Or;
    return c;
}

constexpr int kSeedsPerPoint = 10;

/// Streams every grid run through the per-sample checker, then re-validates
/// the in-region half with the materializing checkers (whose traces stay
/// small there) so both checker implementations gate the same data.
Gate coupled_bounds_gate(PairKind pair) {
    const std::vector<GridPoint>& grid = parameter_grid();
    const std::size_t runs = grid.size() * kSeedsPerPoint;

    std::vector<CheckSummary> streamed(runs);
    parallel_for(runs, [&](std::size_t k) {
        const GridPoint& p = grid[k / kSeedsPerPoint];
        const ScenarioConfig c = grid_config(p, derive_seed(101, k));
        StreamingChecker checker(pair);
        run_coupled(c, pair, checker);
        streamed[k] = checker.summary();
    });

    std::size_t samples = 0, violations = 0, sandwich = 0;
    for (const CheckSummary& s : streamed) {
        samples += s.samples;
        violations += s.violations;
        sandwich += s.sandwich_violations;
    }

    std::vector<std::size_t> in_region;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridPoint& p = grid[i];
        if (inside_stability_region(p.lambda1, p.lambda2, p.mu1, p.mu2)) {
            in_region.push_back(i);
        }
    }
    const std::size_t reruns = in_region.size() * kSeedsPerPoint;
    std::vector<std::size_t> materialized(reruns);
    parallel_for(reruns, [&](std::size_t k) {
        const std::size_t i = in_region[k / kSeedsPerPoint];
        const std::size_t run = i * kSeedsPerPoint + k % kSeedsPerPoint;
        const ScenarioConfig c = grid_config(grid[i], derive_seed(101, run));
        const CoupledTrace trace = run_coupled(c, pair);
        std::size_t count = 0;
        if (pair == PairKind::OrUb) {
            count += check_dominance(trace).size();
            count += check_subsets(trace).size();
        } else {
            count += check_lower_bounds(trace).size();
        }
        materialized[k] = count;
    });
    std::size_t recheck_violations = 0;
    for (std::size_t c : materialized) recheck_violations += c;

    std::ostringstream out;
    out << runs << " runs, " << samples << " samples, streamed violations="
        << violations << " sandwich=" << sandwich << "; " << reruns
        << " materialized reruns, violations=" << recheck_violations;
    return {violations == 0 && sandwich == 0 && recheck_violations == 0, out.str()};
}

Gate replay_gate() {
    const Table1Replay replay = replay_table1();
    int bad = 0;
    auto expect = [&bad](const JobServiceRecord& r, double start, int server,
                         double departure) {
        if (r.start != start || r.server != server || r.departure != departure) ++bad;
    };
    if (replay.or_records.size() != 3 || replay.ub_records.size() != 3) {
        return {false, "wrong record count"};
    }
    expect(replay.or_records[0], 0.0, 1, 10.0);
    expect(replay.or_records[1], 1.0, 2, 5.0);
    expect(replay.or_records[2], 5.0, 2, 6.0);
    expect(replay.ub_records[0], 5.0, 2, 6.0);
    expect(replay.ub_records[1], 2.0, 2, 5.0);
    expect(replay.ub_records[2], 3.0, 1, 10.0);

    const bool interval_ok = replay.q2_violation_intervals.size() == 1 &&
                             replay.q2_violation_intervals[0].first == 3.0 &&
                             replay.q2_violation_intervals[0].second == 5.0;
    std::ostringstream out;
    out << "twelve service values " << (bad == 0 ? "exact" : "WRONG") << ", type-2 count "
        << "violation on ";
    if (replay.q2_violation_intervals.empty()) {
        out << "(none)";
    } else {
        out << "[" << replay.q2_violation_intervals[0].first << ","
            << replay.q2_violation_intervals[0].second << ")";
    }
    return {bad == 0 && interval_ok, out.str()};
}

Gate poisson_snapshot_gate() {
    ScenarioConfig c;
    c.lambda1 = 2.0;
    c.lambda2 = 0.5;
    c.mu1 = 4.0;
    c.mu2 = 4.0;
    c.threshold = 0.5;
    c.horizon = 625000.0;
    c.master_seed = 3;
    const PastaSummary s = pasta_check(c, 100000);

    const double se = std::sqrt(s.variance / static_cast<double>(s.samples));
    const bool mean_ok = std::abs(s.mean - s.theory_mean) <= 3.0 * se;
    const bool disp_ok = s.dispersion() >= 0.9 && s.dispersion() <= 1.1;
    const bool p_ok = s.p_value > 0.01;
    std::ostringstream out;
    out << s.samples << " samples, mean=" << s.mean << " (theory " << s.theory_mean
        << ", 3se=" << 3.0 * se << "), dispersion=" << s.dispersion()
        << ", p=" << s.p_value;
    return {mean_ok && disp_ok && p_ok, out.str()};
}

Gate overload_drift_gate() {
    ScenarioConfig q2;
    q2.lambda1 = 0.1;
    q2.lambda2 = 1.5;
    q2.mu1 = 1.0;
    q2.mu2 = 1.0;
    q2.threshold = 1.0;
    q2.horizon = 1e5;
    q2.master_seed = 4;
    DriftOptions q2_opts;
    q2_opts.counter = DriftCounter::Queue2;
    const DriftEstimate d2 = estimate_drift(q2, 5, q2_opts);

    ScenarioConfig total = q2;
    total.lambda1 = 2.5;
    total.lambda2 = 0.5;
    total.master_seed = 5;
    const DriftEstimate dt = estimate_drift(total, 5);

    const bool q2_ok = std::abs(d2.slope - 0.5) <= 0.05 &&
                       d2.classification == DriftClass::UnstableEvidence;
    const bool total_ok = std::abs(dt.slope - 1.0) <= 0.1 &&
                          dt.classification == DriftClass::UnstableEvidence;
    std::ostringstream out;
    out << "queue-2 slope=" << d2.slope << " (want 0.5 +/-10%), total slope=" << dt.slope
        << " (want 1.0 +/-10%)";
    return {q2_ok && total_ok, out.str()};
}

Gate region_recovery_gate() {
    SweepConfig sweep;
    // 10x10 lattice over (0,3)^2, keeping points at Euclidean distance
    // >= 0.15 from both boundary lines of the region.
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double l1 = 0.15 + 0.3 * i;
            const double l2 = 0.15 + 0.3 * j;
            const double d_total = std::abs(l1 + l2 - 2.0) / std::sqrt(2.0);
            const double d_q2 = std::abs(l2 - 1.0);
            if (d_total >= 0.15 && d_q2 >= 0.15) sweep.grid.emplace_back(l1, l2);
        }
    }
    sweep.mu1 = 1.0;
    sweep.mu2 = 1.0;
    sweep.thresholds = {0.1, 1.0, 10.0};
    sweep.replications = 3;
    sweep.horizon = 2e4;
    sweep.master_seed = 6;
    const std::vector<RegionPoint> points = sweep_region(sweep);

    std::size_t cells = 0, agree = 0, invariant = 0;
    for (const RegionPoint& p : points) {
        const DriftClass want =
            p.inside_theory ? DriftClass::StableEvidence : DriftClass::UnstableEvidence;
        bool same = true;
        for (const DriftEstimate& d : p.drift) {
            ++cells;
            if (d.classification == want) ++agree;
            if (d.classification != p.drift.front().classification) same = false;
        }
        if (same) ++invariant;
    }
    const double agree_pct = 100.0 * static_cast<double>(agree) / static_cast<double>(cells);
    const double inv_pct =
        100.0 * static_cast<double>(invariant) / static_cast<double>(points.size());
    std::ostringstream out;
    out << points.size() << " grid points x " << sweep.thresholds.size()
        << " thresholds: classification matches region membership on " << agree << "/"
        << cells << " (" << agree_pct << "%), threshold-invariant on " << invariant << "/"
        << points.size() << " (" << inv_pct << "%)";
    return {agree_pct >= 95.0 && inv_pct >= 95.0, out.str()};
}

Gate fcfs_equivalence_gate() {
    ScenarioConfig c;
    c.lambda1 = 0.4;
    c.lambda2 = 0.4;
    c.mu1 = 1.0;
    c.mu2 = 1.0;
    c.threshold = 1.0;
    c.horizon = 1e5;
    c.master_seed = 1;
    const EquivalenceSummary s = fcfs_equivalence_check(c, 20);
    std::ostringstream out;
    out << "delayed=" << s.delayed.mean << "+/-" << s.delayed.ci_half
        << " vs fcfs=" << s.fcfs.mean << "+/-" << s.fcfs.ci_half << " (95% CIs, "
        << s.delayed.replications << " replications)";
    return {s.intervals_overlap, out.str()};
}

Gate crossover_search_gate() {
    XConfig c;
    c.lambda1 = 0.5;
    c.lambda2 = 0.5;
    c.mu1 = 1.0;
    c.mu2 = 1.0;
    c.t1 = 5.0;
    c.t2 = 1.0;
    c.horizon = 1e3;
    c.master_seed = 7;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 100; ++i) {
        seeds.push_back(derive_seed(c.master_seed, kSaltReplication + i));
    }
    const std::vector<SearchResult> results = search_violations(c, seeds);
    std::size_t hits = 0;
    for (const SearchResult& r : results) {
        if (r.violation.has_value()) ++hits;
    }
    std::ostringstream out;
    out << hits << "/" << seeds.size() << " seeds found a queue-count violation";
    return {hits >= 1, out.str()};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run_argv(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("nqueue");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

Gate determinism_gate() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "nqsim_acceptance";
    fs::create_directories(dir);

    struct Manifest {
        const char* name;
        std::vector<std::string> args;  ///< without output flags
        std::vector<std::string> out_flags;  ///< flag names taking a path
    };
    const std::vector<Manifest> manifests = {
        {"couple",
         {"couple", "--lambda1", "0.4", "--lambda2", "0.4", "--mu1", "1", "--mu2", "1",
          "--threshold", "1", "--horizon", "300", "--seed", "11"},
         {"--out", "--violations"}},
        {"replay", {"replay-table1"}, {"--out"}},
        {"xsearch",
         {"x-search", "--lambda1", "0.5", "--lambda2", "0.5", "--mu1", "1", "--mu2", "1",
          "--t1", "5", "--t2", "1", "--horizon", "1000", "--seed", "7"},
         {"--out"}},
    };

    int mismatches = 0;
    std::ostringstream out;
    for (const Manifest& m : manifests) {
        std::vector<std::string> first_files, second_files;
        for (int round = 0; round < 2; ++round) {
            std::vector<std::string> args = m.args;
            std::vector<fs::path> paths;
            for (std::size_t f = 0; f < m.out_flags.size(); ++f) {
                const fs::path p =
                    dir / (std::string(m.name) + "_" + std::to_string(round) + "_" +
                           std::to_string(f) + ".out");
                args.push_back(m.out_flags[f]);
                args.push_back(p.string());
                paths.push_back(p);
            }
            const int rc = run_argv(args);
            if (rc != 0) {
                out << m.name << " exited " << rc << "; ";
                ++mismatches;
            }
            for (const fs::path& p : paths) {
                (round == 0 ? first_files : second_files).push_back(read_file(p));
            }
        }
        // A clean run's violations artifact is empty by design, so only the
        // primary artifact must carry bytes; every artifact must rerun
        // byte-identically.
        const bool same = first_files == second_files;
        const bool nonempty = !first_files.empty() && !first_files.front().empty();
        if (!same || !nonempty) {
            out << m.name << (same ? " produced an empty primary artifact" : " artifacts differ")
                << "; ";
            ++mismatches;
        }
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (mismatches == 0) {
        out << manifests.size() << " manifests rerun, all artifacts byte-identical";
    }
    return {mismatches == 0, out.str()};
}

}  // namespace

int main() {
    std::printf("acceptance gates (fixed seeds; rates/thresholds listed per gate)\n");

    run_gate("coupled-dominance-and-containment", [] {
        return coupled_bounds_gate(PairKind::OrUb);
    });
    run_gate("counterexample-replay", replay_gate);
    run_gate("single-server-lower-bounds", [] {
        return coupled_bounds_gate(PairKind::OrMm1);
    });
    run_gate("poisson-snapshot-of-young-jobs", poisson_snapshot_gate);
    run_gate("overload-drift-rates", overload_drift_gate);
    run_gate("region-recovery-and-threshold-invariance", region_recovery_gate);
    run_gate("fcfs-waiting-count-equivalence", fcfs_equivalence_gate);
    run_gate("crossover-violation-search", crossover_search_gate);
    run_gate("artifact-determinism", determinism_gate);

    if (g_failures == 0) {
        std::printf("acceptance: all gates passed\n");
        return 0;
    }
    std::printf("acceptance: %d gate(s) FAILED\n", g_failures);
    return 1;
}
