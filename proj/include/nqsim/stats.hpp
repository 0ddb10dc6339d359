#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nqsim {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares of y against x. Throws InsufficientDataError when
/// fewer than two points or all x equal.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased (n-1 denominator); 0 when n < 2
};

SampleStats summarize(std::span<const double> xs);

/// Upper-tail probability of a chi-square statistic with dof degrees of
/// freedom; returns 1 for dof == 0.
double chi_square_tail(double statistic, int dof);

/// Two-sided Student-t critical value for the given confidence level
/// (e.g. 0.95) and degrees of freedom.
double student_t_critical(double confidence, int dof);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
    double lo() const { return mean - half_width; }
    double hi() const { return mean + half_width; }
};

/// Student-t confidence interval for the mean of xs. Requires n >= 2.
MeanCi mean_ci(std::span<const double> xs, double confidence);

/// Pearson chi-square of observed value counts (index = value) against a
/// Poisson pmf with the given mean. Adjacent cells are pooled from both ends
/// until every cell's expected count is at least min_expected; everything
/// above the largest observed value folds into the last cell.
struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int cells = 0;
};

ChiSquareResult poisson_chi_square(const std::vector<std::size_t>& counts, double mean,
                                   double min_expected = 5.0);

}  // namespace nqsim
