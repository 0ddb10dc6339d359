#include "nqsim/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "nqsim/config_file.hpp"
#include "nqsim/coupling.hpp"
#include "nqsim/errors.hpp"
#include "nqsim/io.hpp"
#include "nqsim/seeds.hpp"
#include "nqsim/stability.hpp"

namespace nqsim {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

bool is_set(double v) { return !std::isnan(v); }

struct HelpRequested {
    std::string text;
};

double require_flag(double v, const char* name) {
    if (!is_set(v)) throw UsageError(std::string("missing required option ") + name);
    return v;
}

Model parse_model(const std::string& name) {
    if (name == "or") return Model::Or;
    if (name == "ub") return Model::Ub;
    if (name == "fcfs") return Model::Fcfs;
    if (name == "x") return Model::X;
    throw UsageError("unknown model '" + name + "' (expected or|ub|fcfs|x)");
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("grid must be start:stop:step");
    const double start = parse_number(parts[0], "grid start");
    const double stop = parse_number(parts[1], "grid stop");
    const double step = parse_number(parts[2], "grid step");
    if (!(step > 0.0) || stop < start) throw UsageError("grid needs stop >= start, step > 0");
    std::vector<double> values;
    // Tolerate accumulated rounding at the top end.
    for (double v = start; v <= stop + step * 1e-9; v += step) values.push_back(v);
    return values;
}

std::vector<double> parse_double_list(const std::string& spec, const char* what) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_number(part, what));
    if (out.empty()) throw UsageError(std::string(what) + " list is empty");
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& spec) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const double v = parse_number(part, "seed");
        if (v < 0.0 || v != std::floor(v)) throw UsageError("seeds must be nonnegative integers");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

}  // namespace

RunManifest parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Two-server threshold-routing queue simulator"};
    app.require_subcommand(1);

    double lambda1 = kUnset, lambda2 = kUnset, mu1 = kUnset, mu2 = kUnset;
    double threshold = kUnset, t1 = kUnset, t2 = kUnset;
    double horizon = 10000.0;
    std::uint64_t seed = 1;
    std::string model = "or";
    std::string config_path, out_path, violations_path;
    std::string grid_spec, thresholds_spec, seeds_spec;
    long replications = -1;
    long samples = 100000;
    bool negative_control = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--horizon", horizon, "simulated time horizon");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--config", config_path, "scenario file; its keys override flags");
        cmd->add_option("--out", out_path, "primary artifact path");
    };
    auto add_rates = [&](CLI::App* cmd) {
        cmd->add_option("--lambda1", lambda1, "type-1 arrival rate");
        cmd->add_option("--lambda2", lambda2, "type-2 arrival rate");
        cmd->add_option("--mu1", mu1, "server-1 potential completion rate");
        cmd->add_option("--mu2", mu2, "server-2 potential completion rate");
    };

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run one system with its single-server companions and check lower bounds");
    add_common(simulate);
    add_rates(simulate);
    simulate->add_option("--threshold", threshold, "type-1 eligibility threshold");
    simulate->add_option("--model", model, "or|ub|fcfs");
    simulate->add_option("--violations", violations_path, "violation JSONL path");

    CLI::App* couple = app.add_subcommand(
        "couple", "run the thresholded system with its bound and check dominance");
    add_common(couple);
    add_rates(couple);
    couple->add_option("--threshold", threshold, "type-1 eligibility threshold");
    couple->add_option("--model", model, "must be 'or'");
    couple->add_option("--violations", violations_path, "violation JSONL path");
    couple->add_flag("--negative-control", negative_control,
                     "feed the two systems unrelated randomness (checks should fire)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "classify a (lambda1, lambda2) grid by queue-growth drift");
    add_common(sweep);
    add_rates(sweep);
    sweep->add_option("--grid", grid_spec, "axis values start:stop:step (both axes)");
    sweep->add_option("--thresholds", thresholds_spec, "comma-separated threshold list");
    sweep->add_option("--replications", replications, "replications per point (default 3)");

    CLI::App* pasta = app.add_subcommand(
        "pasta", "sample the bound system's young type-1 count against its Poisson law");
    add_common(pasta);
    add_rates(pasta);
    pasta->add_option("--threshold", threshold, "type-1 eligibility threshold");
    pasta->add_option("--samples", samples, "target post-warm-up sample count");

    CLI::App* fcfs_equiv = app.add_subcommand(
        "fcfs-equiv", "compare bound-system and FCFS stationary waiting counts");
    add_common(fcfs_equiv);
    add_rates(fcfs_equiv);
    fcfs_equiv->add_option("--threshold", threshold, "type-1 eligibility threshold");
    fcfs_equiv->add_option("--replications", replications, "replications per arm (default 20)");

    CLI::App* replay = app.add_subcommand(
        "replay-table1", "deterministic replay of the built-in counterexample script");
    replay->add_option("--out", out_path, "report JSON path");

    CLI::App* xsearch = app.add_subcommand(
        "x-search", "search seeds of the two-threshold pair for dominance violations");
    add_common(xsearch);
    add_rates(xsearch);
    xsearch->add_option("--t1", t1, "type-1 eligibility threshold");
    xsearch->add_option("--t2", t2, "type-2 eligibility threshold");
    xsearch->add_option("--threshold", threshold,
                        "rejected here; the two-threshold model uses --t1/--t2");
    xsearch->add_option("--replications", replications, "seed count (default 100)");
    xsearch->add_option("--seeds", seeds_spec, "explicit comma-separated seed list");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunManifest m;
    for (CLI::App* cmd : {simulate, couple, sweep, pasta, fcfs_equiv, replay, xsearch}) {
        if (cmd->parsed()) m.command = cmd->get_name();
    }

    if (!config_path.empty()) {
        const ParsedConfig cfg = parse_config_file(config_path);
        const auto override_num = [&](const char* key, double& slot) {
            if (cfg.has(key)) slot = cfg.number(key);
        };
        override_num("lambda1", lambda1);
        override_num("lambda2", lambda2);
        override_num("mu1", mu1);
        override_num("mu2", mu2);
        override_num("threshold", threshold);
        override_num("t1", t1);
        override_num("t2", t2);
        override_num("horizon", horizon);
        if (cfg.has("model")) model = cfg.text("model");
        if (cfg.has("seed")) {
            const double v = cfg.number("seed");
            if (v < 0.0 || v != std::floor(v)) throw UsageError("seed must be an integer");
            seed = static_cast<std::uint64_t>(v);
        }
        if (cfg.has("replications")) {
            replications = static_cast<long>(cfg.number("replications"));
        }
        if (cfg.has("samples")) samples = static_cast<long>(cfg.number("samples"));
        if (cfg.has_script) {
            ScriptedRun script;
            for (const auto& [time, type] : cfg.arrivals) {
                script.arrivals.emplace_back(time,
                                             type == 1 ? JobType::Type1 : JobType::Type2);
            }
            script.z1_jumps = cfg.z1_jumps;
            script.z2_jumps = cfg.z2_jumps;
            script.t1 = is_set(t1) ? t1 : 0.0;
            script.t2 = is_set(t2) ? t2 : 0.0;
            script.horizon = horizon;
            m.script = std::move(script);
        }
    }

    const Model parsed_model = parse_model(model);
    auto need_rates = [&] {
        require_flag(lambda1, "--lambda1");
        require_flag(lambda2, "--lambda2");
        require_flag(mu1, "--mu1");
        require_flag(mu2, "--mu2");
    };
    auto fill_scenario = [&](Model mdl) {
        need_rates();
        m.scenario.lambda1 = lambda1;
        m.scenario.lambda2 = lambda2;
        m.scenario.mu1 = mu1;
        m.scenario.mu2 = mu2;
        m.scenario.model = mdl;
        if (mdl == Model::Fcfs) {
            m.scenario.threshold = is_set(threshold) ? threshold : 0.0;
        } else {
            m.scenario.threshold = require_flag(threshold, "--threshold");
        }
        m.scenario.horizon = horizon;
        m.scenario.master_seed = seed;
    };

    m.out_path = out_path;
    m.violations_path = violations_path;
    m.negative_control = negative_control;
    m.samples = static_cast<std::size_t>(samples);

    if (m.command == "simulate") {
        if (parsed_model == Model::X) {
            throw UsageError("--model x is only valid for x-search");
        }
        fill_scenario(parsed_model);
    } else if (m.command == "couple") {
        if (parsed_model != Model::Or) {
            throw UsageError("couple pairs the threshold model with its bound; --model must be or");
        }
        fill_scenario(Model::Or);
    } else if (m.command == "sweep") {
        require_flag(mu1, "--mu1");
        require_flag(mu2, "--mu2");
        if (grid_spec.empty()) throw UsageError("missing required option --grid");
        if (thresholds_spec.empty()) throw UsageError("missing required option --thresholds");
        m.grid_values = parse_grid_spec(grid_spec);
        m.thresholds = parse_double_list(thresholds_spec, "threshold");
        for (double t : m.thresholds) {
            if (!(t > 0.0)) throw UsageError("sweep thresholds must be > 0");
        }
        m.scenario.mu1 = mu1;
        m.scenario.mu2 = mu2;
        m.scenario.horizon = horizon;
        m.scenario.master_seed = seed;
        m.replications = replications < 0 ? 3 : static_cast<int>(replications);
    } else if (m.command == "pasta") {
        fill_scenario(Model::Or);
    } else if (m.command == "fcfs-equiv") {
        fill_scenario(Model::Or);
        m.replications = replications < 0 ? 20 : static_cast<int>(replications);
    } else if (m.command == "replay-table1") {
        // self-contained
    } else if (m.command == "x-search") {
        if (is_set(threshold)) {
            throw UsageError("--threshold conflicts with the two-threshold model; use --t1/--t2");
        }
        if (!m.script.has_value()) {
            need_rates();
            m.xconfig.lambda1 = lambda1;
            m.xconfig.lambda2 = lambda2;
            m.xconfig.mu1 = mu1;
            m.xconfig.mu2 = mu2;
            m.xconfig.t1 = require_flag(t1, "--t1");
            m.xconfig.t2 = require_flag(t2, "--t2");
            m.xconfig.horizon = horizon;
            m.xconfig.master_seed = seed;
            m.replications = replications < 0 ? 100 : static_cast<int>(replications);
            if (!seeds_spec.empty()) {
                m.seeds = parse_seed_list(seeds_spec);
            } else {
                for (int i = 0; i < m.replications; ++i) {
                    m.seeds.push_back(
                        derive_seed(seed, kSaltReplication + static_cast<std::uint64_t>(i)));
                }
            }
        }
    }
    return m;
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open output file: " + path);
    return os;
}

void finish_output(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw IoError("failed writing output file: " + path);
}

/// Streams trace rows as samples arrive; constant memory at any horizon.
class CsvTraceWriter : public CoupledObserver {
public:
    CsvTraceWriter(std::ostream& os, PairKind pair) : os_(os), pair_(pair) {
        os_ << "time,event_kind,or_q1_minus,or_q1_plus,or_q2,or_r1,or_r2,or_r3";
        if (pair_ == PairKind::OrUb) {
            os_ << ",ub_q1_minus,ub_q1_plus,ub_q2,ub_r1,ub_r2,ub_r3";
        } else {
            os_ << ",mm1_n2,mm1_n";
        }
        os_ << '\n';
    }

    void on_sample(const SampleContext& ctx) override {
        os_ << format_double(ctx.time) << ',' << event_kind_label(ctx.kind);
        write_cells(ctx.primary->counters());
        if (pair_ == PairKind::OrUb) {
            write_cells(ctx.secondary->counters());
        } else {
            os_ << ',' << ctx.lb_server2->n_jobs << ',' << ctx.lb_total->n_jobs;
        }
        os_ << '\n';
    }

private:
    void write_cells(const Counters& c) {
        os_ << ',' << c.q1_minus << ',' << c.q1_plus << ',' << c.q2 << ',' << c.r1 << ','
            << c.r2 << ',' << c.r3;
    }

    std::ostream& os_;
    PairKind pair_;
};

class TeeObserver : public CoupledObserver {
public:
    TeeObserver(CoupledObserver& a, CoupledObserver* b) : a_(a), b_(b) {}
    void on_sample(const SampleContext& ctx) override {
        a_.on_sample(ctx);
        if (b_ != nullptr) b_->on_sample(ctx);
    }
    void on_end(double horizon) override {
        a_.on_end(horizon);
        if (b_ != nullptr) b_->on_end(horizon);
    }

private:
    CoupledObserver& a_;
    CoupledObserver* b_;
};

void write_violation_artifact(const std::string& path,
                              std::span<const ViolationReport> reports) {
    if (path.empty()) return;
    std::ofstream os = open_output(path);
    write_violations_jsonl(os, reports);
    finish_output(os, path);
}

int exec_checked_run(const RunManifest& m, PairKind pair) {
    m.scenario.validate();
    StreamingChecker checker(pair, {.max_reports = 10000});

    std::optional<std::ofstream> trace_file;
    std::optional<CsvTraceWriter> writer;
    if (!m.out_path.empty()) {
        trace_file.emplace(open_output(m.out_path));
        writer.emplace(*trace_file, pair);
    }
    TeeObserver tee(checker, writer.has_value() ? &*writer : nullptr);
    run_coupled(m.scenario, pair, tee);
    if (trace_file.has_value()) finish_output(*trace_file, m.out_path);

    const CheckSummary& s = checker.summary();
    write_violation_artifact(m.violations_path, s.first_reports);
    std::printf("%s: samples=%zu violations=%zu sandwich_violations=%zu -> %s\n",
                m.command.c_str(), s.samples, s.violations, s.sandwich_violations,
                (s.violations + s.sandwich_violations) == 0 ? "ok" : "FAIL");
    return (s.violations + s.sandwich_violations) == 0 ? 0 : 1;
}

int exec_negative_control(const RunManifest& m) {
    m.scenario.validate();
    const CoupledTrace trace = run_decoupled_or_ub(m.scenario);
    std::vector<ViolationReport> reports = check_dominance(trace);
    const std::vector<ViolationReport> subset_reports = check_subsets(trace);
    reports.insert(reports.end(), subset_reports.begin(), subset_reports.end());

    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_trace_csv(os, trace);
        finish_output(os, m.out_path);
    }
    write_violation_artifact(m.violations_path, reports);
    std::printf("couple(negative-control): samples=%zu violations=%zu (nonzero expected)\n",
                trace.samples.size(), reports.size());
    return reports.empty() ? 0 : 1;
}

int exec_sweep(const RunManifest& m) {
    SweepConfig cfg;
    cfg.mu1 = m.scenario.mu1;
    cfg.mu2 = m.scenario.mu2;
    cfg.thresholds = m.thresholds;
    cfg.replications = m.replications;
    cfg.horizon = m.scenario.horizon;
    cfg.master_seed = m.scenario.master_seed;
    std::size_t skipped = 0;
    for (double l1 : m.grid_values) {
        for (double l2 : m.grid_values) {
            if (l1 + l2 == cfg.mu1 + cfg.mu2 || l2 == cfg.mu2) {
                ++skipped;  // exact boundary points have no strict classification
                continue;
            }
            cfg.grid.emplace_back(l1, l2);
        }
    }
    if (skipped > 0) {
        std::fprintf(stderr, "sweep: skipped %zu grid point(s) on a boundary line\n", skipped);
    }
    const std::vector<RegionPoint> points = sweep_region(cfg);

    std::size_t agree = 0;
    std::size_t total = 0;
    for (const RegionPoint& p : points) {
        for (const DriftEstimate& d : p.drift) {
            ++total;
            const bool stable = d.classification == DriftClass::StableEvidence;
            if (stable == p.inside_theory &&
                d.classification != DriftClass::Inconclusive) {
                ++agree;
            }
        }
    }
    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_sweep_csv(os, points, cfg.thresholds);
        finish_output(os, m.out_path);
    } else {
        write_sweep_csv(std::cout, points, cfg.thresholds);
    }
    std::printf("sweep: points=%zu estimates=%zu agree_with_theory=%zu\n", points.size(), total,
                agree);
    return 0;
}

int exec_pasta(const RunManifest& m) {
    const PastaSummary s = pasta_check(m.scenario, m.samples);
    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_pasta_json(os, s);
        finish_output(os, m.out_path);
    }
    const double se = std::sqrt(s.variance / static_cast<double>(s.samples));
    const bool mean_ok = std::abs(s.mean - s.theory_mean) <= 3.0 * se;
    const bool dispersion_ok = s.dispersion() >= 0.9 && s.dispersion() <= 1.1;
    const bool p_ok = s.p_value > 0.01;
    const bool pass = mean_ok && dispersion_ok && p_ok;
    std::printf("pasta: samples=%zu mean=%.6g (theory %.6g) dispersion=%.4g p=%.4g -> %s\n",
                s.samples, s.mean, s.theory_mean, s.dispersion(), s.p_value,
                pass ? "ok" : "FAIL");
    return pass ? 0 : 1;
}

int exec_fcfs_equiv(const RunManifest& m) {
    const EquivalenceSummary s = fcfs_equivalence_check(m.scenario, m.replications);
    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_equivalence_json(os, s);
        finish_output(os, m.out_path);
    }
    std::printf(
        "fcfs-equiv: delayed=%.6g+-%.3g fcfs=%.6g+-%.3g overlap=%s -> %s\n", s.delayed.mean,
        s.delayed.ci_half, s.fcfs.mean, s.fcfs.ci_half, s.intervals_overlap ? "yes" : "no",
        s.intervals_overlap ? "ok" : "FAIL");
    return s.intervals_overlap ? 0 : 1;
}

int exec_replay(const RunManifest& m) {
    const Table1Replay replay = replay_table1();
    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_replay_json(os, replay);
        finish_output(os, m.out_path);
    }
    std::string intervals;
    for (const auto& [from, to] : replay.q2_violation_intervals) {
        intervals += "[" + format_double(from) + "," + format_double(to) + ") ";
    }
    const bool confirmed = !replay.q2_violation_intervals.empty();
    std::printf("replay-table1: q2 dominance fails on %s-> %s\n",
                confirmed ? intervals.c_str() : "(none) ",
                confirmed ? "confirmed-counterexample" : "FAIL");
    return confirmed ? 0 : 1;
}

int exec_xsearch(const RunManifest& m) {
    if (m.script.has_value()) {
        const ScriptedPairResult pair = run_scripted_pair(*m.script);
        const std::vector<ViolationReport> reports = queue_count_violations(pair.trace);
        write_violation_artifact(m.out_path, reports);
        std::printf("x-search(script): violations=%zu -> %s\n", reports.size(),
                    reports.empty() ? "none found" : "found");
        return reports.empty() ? 1 : 0;
    }
    const std::vector<SearchResult> results = search_violations(m.xconfig, m.seeds);
    std::size_t hits = 0;
    for (const SearchResult& r : results) {
        if (r.violation.has_value()) ++hits;
    }
    if (!m.out_path.empty()) {
        std::ofstream os = open_output(m.out_path);
        write_search_jsonl(os, results);
        finish_output(os, m.out_path);
    }
    std::printf("x-search: seeds=%zu with_violation=%zu -> %s\n", results.size(), hits,
                hits > 0 ? "found" : "none found");
    return hits > 0 ? 0 : 1;
}

}  // namespace

int execute(const RunManifest& m) {
    if (m.command == "simulate") return exec_checked_run(m, PairKind::OrMm1);
    if (m.command == "couple") {
        return m.negative_control ? exec_negative_control(m)
                                  : exec_checked_run(m, PairKind::OrUb);
    }
    if (m.command == "sweep") return exec_sweep(m);
    if (m.command == "pasta") return exec_pasta(m);
    if (m.command == "fcfs-equiv") return exec_fcfs_equiv(m);
    if (m.command == "replay-table1") return exec_replay(m);
    if (m.command == "x-search") return exec_xsearch(m);
    throw UsageError("unknown command '" + m.command + "'");
}

int run_cli(int argc, const char* const* argv) {
    try {
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        return execute(parse_args(args));
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace nqsim
