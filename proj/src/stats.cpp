#include "pointproc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pointproc {

MeanSe mean_se(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("mean_se: empty sample");
    }
    const std::size_t n = samples.size();
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        ss += d * d;
    }
    MeanSe out;
    out.mean = mean;
    out.n = n;
    out.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    out.se = out.sd / std::sqrt(static_cast<double>(n));
    return out;
}

double ks_statistic_uniform(std::vector<double> u) {
    if (u.empty()) {
        throw std::invalid_argument("ks_statistic_uniform: empty sample");
    }
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - u[i];
        const double lo = u[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace pointproc
