#include "nqsim/stability.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nqsim/coupling.hpp"
#include "nqsim/errors.hpp"
#include "nqsim/parallel.hpp"
#include "nqsim/seeds.hpp"
#include "nqsim/stats.hpp"

namespace nqsim {

const char* to_string(DriftClass c) {
    switch (c) {
        case DriftClass::StableEvidence: return "stable-evidence";
        case DriftClass::UnstableEvidence: return "unstable-evidence";
        case DriftClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

long counter_value(const Counters& c, DriftCounter which) {
    return which == DriftCounter::Queue2 ? c.q2 : c.waiting();
}

/// Time-weighted per-window averages of one queue counter over [0, horizon).
class WindowAverageObserver : public CoupledObserver {
public:
    WindowAverageObserver(double horizon, int windows, DriftCounter counter)
        : horizon_(horizon),
          width_(horizon / windows),
          counter_(counter),
          integrals_(static_cast<std::size_t>(windows), 0.0) {}

    void on_sample(const SampleContext& ctx) override {
        accumulate(ctx.time);
        value_ = counter_value(ctx.primary->counters(), counter_);
        if (value_ != 0) any_nonzero_ = true;
    }

    void on_end(double horizon) override { accumulate(horizon); }

    bool any_nonzero() const { return any_nonzero_; }

    std::vector<double> averages() const {
        std::vector<double> out(integrals_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = integrals_[i] / width_;
        return out;
    }

    std::vector<double> midpoints() const {
        std::vector<double> out(integrals_.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = (static_cast<double>(i) + 0.5) * width_;
        }
        return out;
    }

private:
    void accumulate(double to) {
        double t = prev_t_;
        const double cap = std::min(to, horizon_);
        while (t < cap) {
            const auto w = std::min(static_cast<std::size_t>(t / width_),
                                    integrals_.size() - 1);
            double end = std::min((static_cast<double>(w) + 1.0) * width_, cap);
            if (end <= t) end = cap;  // window-boundary rounding guard
            integrals_[w] += static_cast<double>(value_) * (end - t);
            t = end;
        }
        prev_t_ = to;
    }

    double horizon_;
    double width_;
    DriftCounter counter_;
    std::vector<double> integrals_;
    double prev_t_ = 0.0;
    long value_ = 0;
    bool any_nonzero_ = false;
};

/// Time-average of a counter over [warmup, horizon).
class TimeAverageObserver : public CoupledObserver {
public:
    using ValueFn = long (*)(const Counters&);

    TimeAverageObserver(double warmup, double horizon, ValueFn fn)
        : warmup_(warmup), horizon_(horizon), fn_(fn) {}

    void on_sample(const SampleContext& ctx) override {
        accumulate(ctx.time);
        value_ = fn_(ctx.primary->counters());
    }

    void on_end(double horizon) override { accumulate(horizon); }

    double average() const { return integral_ / (horizon_ - warmup_); }

private:
    void accumulate(double to) {
        const double lo = std::max(prev_t_, warmup_);
        const double hi = std::min(to, horizon_);
        if (hi > lo) integral_ += static_cast<double>(value_) * (hi - lo);
        prev_t_ = to;
    }

    double warmup_;
    double horizon_;
    ValueFn fn_;
    double prev_t_ = 0.0;
    long value_ = 0;
    double integral_ = 0.0;
};

double run_one_drift_slope(const ScenarioConfig& config, std::uint64_t seed,
                           const DriftOptions& options, bool& any_nonzero) {
    ScenarioConfig c = config;
    c.master_seed = seed;
    const EventStreamSet streams = build_coupled_streams(c.rates(), c.horizon, seed);
    WindowAverageObserver obs(c.horizon, options.windows, options.counter);
    DriverSetup setup;
    setup.streams = &streams;
    setup.primary = c.discipline();
    run_events(setup, obs);
    any_nonzero = obs.any_nonzero();
    if (!any_nonzero) return 0.0;
    const std::vector<double> x = obs.midpoints();
    const std::vector<double> y = obs.averages();
    return least_squares(x, y).slope;
}

}  // namespace

DriftEstimate estimate_drift(const ScenarioConfig& config, int replications,
                             const DriftOptions& options) {
    config.validate();
    if (replications < 3) {
        throw InvalidParameterError("drift estimation needs at least 3 replications");
    }
    if (options.windows < 2) {
        throw InvalidParameterError("drift estimation needs at least 2 windows");
    }

    std::vector<double> slopes(static_cast<std::size_t>(replications), 0.0);
    bool degenerate = true;
    for (int i = 0; i < replications; ++i) {
        bool any_nonzero = false;
        const std::uint64_t seed =
            derive_seed(config.master_seed, kSaltReplication + static_cast<std::uint64_t>(i));
        slopes[static_cast<std::size_t>(i)] =
            run_one_drift_slope(config, seed, options, any_nonzero);
        if (any_nonzero) degenerate = false;
    }

    DriftEstimate est;
    est.degenerate = degenerate;
    if (degenerate) {
        est.classification = DriftClass::StableEvidence;
        return est;
    }
    const SampleStats s = summarize(slopes);
    est.slope = s.mean;
    est.slope_stderr = std::sqrt(s.variance / static_cast<double>(replications));
    const double eps = 3.0 * est.slope_stderr + options.epsilon0;
    if (std::abs(est.slope) <= eps) {
        est.classification = DriftClass::StableEvidence;
    } else if (est.slope > eps) {
        est.classification = DriftClass::UnstableEvidence;
    } else {
        est.classification = DriftClass::Inconclusive;
    }
    return est;
}

bool inside_stability_region(double lambda1, double lambda2, double mu1, double mu2) {
    return lambda1 + lambda2 < mu1 + mu2 && lambda2 < mu2;
}

std::vector<RegionPoint> sweep_region(const SweepConfig& config) {
    if (config.grid.empty()) throw InvalidParameterError("sweep needs grid points");
    if (config.thresholds.empty()) throw InvalidParameterError("sweep needs thresholds");
    for (const auto& [l1, l2] : config.grid) {
        if (l1 + l2 == config.mu1 + config.mu2 || l2 == config.mu2) {
            throw BoundaryPointError("grid point lies on a stability boundary line");
        }
    }

    std::vector<RegionPoint> points(config.grid.size());
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        points[i].lambda1 = config.grid[i].first;
        points[i].lambda2 = config.grid[i].second;
        points[i].inside_theory = inside_stability_region(points[i].lambda1, points[i].lambda2,
                                                          config.mu1, config.mu2);
        points[i].drift.resize(config.thresholds.size());
    }

    const std::size_t per_point = config.thresholds.size();
    parallel_for(config.grid.size() * per_point, [&](std::size_t task) {
        const std::size_t pi = task / per_point;
        const std::size_t ti = task % per_point;
        ScenarioConfig run;
        run.lambda1 = points[pi].lambda1;
        run.lambda2 = points[pi].lambda2;
        run.mu1 = config.mu1;
        run.mu2 = config.mu2;
        run.threshold = config.thresholds[ti];
        run.horizon = config.horizon;
        run.model = Model::Or;
        run.master_seed = derive_seed(derive_seed(config.master_seed, kSaltSweep + pi), ti);
        points[pi].drift[ti] = estimate_drift(run, config.replications, config.drift);
    });
    return points;
}

namespace {

/// Left-limit values of the young type-1 count at independent inspection
/// times, recorded as a histogram.
class PastaSampler : public CoupledObserver {
public:
    PastaSampler(const std::vector<double>& inspections, double warmup)
        : inspections_(inspections), warmup_(warmup) {}

    void on_sample(const SampleContext& ctx) override {
        consume_until(ctx.time);
        value_ = ctx.primary->counters().q1_minus;
    }

    void on_end(double horizon) override { consume_until(horizon); }

    const std::vector<std::size_t>& histogram() const { return counts_; }
    std::size_t samples() const { return samples_; }
    double mean() const { return samples_ > 0 ? sum_ / static_cast<double>(samples_) : 0.0; }

    double variance() const {
        if (samples_ < 2) return 0.0;
        const double m = mean();
        return (sum_sq_ - static_cast<double>(samples_) * m * m) /
               static_cast<double>(samples_ - 1);
    }

private:
    void consume_until(double t) {
        while (next_ < inspections_.size() && inspections_[next_] <= t) {
            if (inspections_[next_] > warmup_) record(value_);
            ++next_;
        }
    }

    void record(long v) {
        ++samples_;
        sum_ += static_cast<double>(v);
        sum_sq_ += static_cast<double>(v) * static_cast<double>(v);
        const auto idx = static_cast<std::size_t>(v);
        if (counts_.size() <= idx) counts_.resize(idx + 1, 0);
        ++counts_[idx];
    }

    const std::vector<double>& inspections_;
    double warmup_;
    std::size_t next_ = 0;
    long value_ = 0;
    std::size_t samples_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
    std::vector<std::size_t> counts_;
};

}  // namespace

PastaSummary pasta_check(const ScenarioConfig& config, std::size_t sample_count) {
    config.validate();
    if (sample_count < 30) {
        throw InvalidParameterError("distribution check needs at least 30 samples");
    }
    const double warmup = std::max(0.2 * config.horizon, 10.0 * config.threshold);
    if (warmup >= config.horizon) {
        throw InsufficientDataError("horizon leaves no room past the warm-up");
    }
    const double rate = static_cast<double>(sample_count) / (config.horizon - warmup);
    const std::vector<double> inspections = sample_poisson_stream(
        rate, config.horizon, derive_seed(config.master_seed, kStreamInspection));

    const EventStreamSet streams =
        build_coupled_streams(config.rates(), config.horizon, config.master_seed);
    PastaSampler sampler(inspections, warmup);
    DriverSetup setup;
    setup.streams = &streams;
    setup.primary = n_model_ub(config.threshold);
    run_events(setup, sampler);

    if (sampler.samples() < 30) {
        throw InsufficientDataError("too few post-warm-up samples");
    }
    PastaSummary out;
    out.samples = sampler.samples();
    out.mean = sampler.mean();
    out.variance = sampler.variance();
    out.theory_mean = config.lambda1 * config.threshold;
    const ChiSquareResult chi = poisson_chi_square(sampler.histogram(), out.theory_mean);
    out.chi_square = chi.statistic;
    out.dof = chi.dof;
    out.p_value = chi.p_value;
    return out;
}

namespace {

long waiting_past_and_type2(const Counters& c) { return c.q1_plus + c.q2; }

double time_average_run(const ScenarioConfig& config, const DisciplineSpec& discipline,
                        std::uint64_t seed) {
    const EventStreamSet streams = build_coupled_streams(config.rates(), config.horizon, seed);
    TimeAverageObserver obs(0.2 * config.horizon, config.horizon, &waiting_past_and_type2);
    DriverSetup setup;
    setup.streams = &streams;
    setup.primary = discipline;
    run_events(setup, obs);
    return obs.average();
}

}  // namespace

EquivalenceSummary fcfs_equivalence_check(const ScenarioConfig& config, int replications) {
    config.validate();
    if (replications < 2) {
        throw InvalidParameterError("equivalence check needs at least 2 replications");
    }
    if (!inside_stability_region(config.lambda1, config.lambda2, config.mu1, config.mu2)) {
        throw UnstableParametersError(
            "parameters outside the stability region have no stationary distribution");
    }

    const auto r = static_cast<std::size_t>(replications);
    std::vector<double> delayed_means(r, 0.0);
    std::vector<double> fcfs_means(r, 0.0);
    parallel_for(2 * r, [&](std::size_t task) {
        const std::size_t i = task % r;
        if (task < r) {
            // Ranking by eligibility makes the delayed system a pure delay
            // stage feeding an FCFS stage, which is what the waiting-count
            // comparison against the zero-threshold system is about. The
            // arrival ranking used for the coupled pathwise bounds gives
            // aged type-1 jobs an effective head start of T at server 2 and
            // measurably inflates the waiting count.
            delayed_means[i] = time_average_run(
                config, n_model_ub(config.threshold, ServiceOrder::Eligibility),
                derive_seed(config.master_seed, kSaltReplication + i));
        } else {
            fcfs_means[i] = time_average_run(
                config, n_model_fcfs(),
                derive_seed(config.master_seed, kSaltSecondArm + i));
        }
    });

    EquivalenceSummary out;
    const MeanCi d = mean_ci(delayed_means, 0.95);
    const MeanCi f = mean_ci(fcfs_means, 0.95);
    out.delayed = {d.mean, d.half_width, replications};
    out.fcfs = {f.mean, f.half_width, replications};
    out.intervals_overlap = std::abs(d.mean - f.mean) <= d.half_width + f.half_width;
    return out;
}

}  // namespace nqsim
