#include "nqsim/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "nqsim/errors.hpp"

namespace nqsim {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidParameterError("least_squares needs equally sized inputs");
    }
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientDataError("least_squares needs at least two points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientDataError("least_squares needs varying x");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

SampleStats summarize(std::span<const double> xs) {
    SampleStats s;
    s.n = xs.size();
    if (s.n == 0) return s;
    for (double v : xs) s.mean += v;
    s.mean /= static_cast<double>(s.n);
    if (s.n >= 2) {
        double ss = 0.0;
        for (double v : xs) {
            const double d = v - s.mean;
            ss += d * d;
        }
        s.variance = ss / static_cast<double>(s.n - 1);
    }
    return s;
}

double chi_square_tail(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (!(statistic > 0.0)) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

double student_t_critical(double confidence, int dof) {
    if (dof <= 0) throw InvalidParameterError("t critical value needs dof >= 1");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidParameterError("confidence must lie in (0,1)");
    }
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.5 + confidence / 2.0);
}

MeanCi mean_ci(std::span<const double> xs, double confidence) {
    if (xs.size() < 2) throw InsufficientDataError("confidence interval needs n >= 2");
    const SampleStats s = summarize(xs);
    MeanCi ci;
    ci.mean = s.mean;
    const double se = std::sqrt(s.variance / static_cast<double>(s.n));
    ci.half_width = student_t_critical(confidence, static_cast<int>(s.n) - 1) * se;
    return ci;
}

ChiSquareResult poisson_chi_square(const std::vector<std::size_t>& counts, double mean,
                                   double min_expected) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw InvalidParameterError("Poisson mean must be finite and non-negative");
    }
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) throw InsufficientDataError("chi-square needs observations");
    const double n = static_cast<double>(total);

    struct Cell {
        double obs = 0.0;
        double exp = 0.0;
    };
    std::vector<Cell> cells;
    cells.reserve(counts.size());
    double pmf = std::exp(-mean);
    double cdf = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (k > 0) pmf *= mean / static_cast<double>(k);
        cdf += pmf;
        cells.push_back({static_cast<double>(counts[k]), n * pmf});
    }
    // Mass above the tracked range folds into the final cell.
    cells.back().exp += n * std::max(0.0, 1.0 - cdf);

    auto merge_into = [](Cell& keep, const Cell& other) {
        keep.obs += other.obs;
        keep.exp += other.exp;
    };
    while (cells.size() > 1 && cells.back().exp < min_expected) {
        merge_into(cells[cells.size() - 2], cells.back());
        cells.pop_back();
    }
    while (cells.size() > 1 && cells.front().exp < min_expected) {
        merge_into(cells[1], cells[0]);
        cells.erase(cells.begin());
    }

    ChiSquareResult result;
    result.cells = static_cast<int>(cells.size());
    result.dof = result.cells - 1;
    for (const Cell& c : cells) {
        if (c.exp <= 0.0) continue;
        const double d = c.obs - c.exp;
        result.statistic += d * d / c.exp;
    }
    result.p_value = chi_square_tail(result.statistic, result.dof);
    return result;
}

}  // namespace nqsim
