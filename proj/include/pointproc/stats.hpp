#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pointproc {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;     // standard error of the mean
    double sd = 0.0;     // sample standard deviation (ddof = 1)
    std::size_t n = 0;
};

/// Sample mean and standard error, accumulated in index order so the result
/// does not depend on thread count.
MeanSe mean_se(std::span<const double> samples);

/// One-sample Kolmogorov-Smirnov statistic against a CDF given as sorted
/// sample values already mapped through the CDF, i.e. u[i] = F(x_(i)).
double ks_statistic_uniform(std::vector<double> u);

/// Two-sample KS statistic between empirical distributions of a and b.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sided critical value c(alpha)/sqrt(n) machinery uses
/// c = 1.628 at the 1% level throughout.
inline constexpr double kKs1PercentCoefficient = 1.628;

}  // namespace pointproc
