#include "pointproc/hazard_spec.hpp"

#include <cmath>
#include <stdexcept>

namespace pointproc {

void validate_waiting_dist(const WaitingDist& dist) {
    std::visit(
        [](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ExponentialWait>) {
                if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) {
                    throw std::invalid_argument("waiting dist: exponential rate must be >= 0");
                }
            } else if constexpr (std::is_same_v<D, PiecewiseCdf>) {
                if (d.knots.size() != d.values.size() || d.knots.size() < 2) {
                    throw std::invalid_argument("waiting dist: piecewise CDF needs matched knots/values");
                }
                if (d.knots.front() != 0.0 || d.values.front() != 0.0) {
                    throw std::invalid_argument("waiting dist: piecewise CDF must start at (0, 0)");
                }
                for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
                    if (!(d.knots[i] <= d.knots[i + 1]) || !(d.values[i] <= d.values[i + 1])) {
                        throw std::invalid_argument("waiting dist: piecewise CDF must be non-decreasing");
                    }
                    if (d.knots[i + 1] == 0.0 && d.values[i + 1] > 0.0) {
                        throw std::invalid_argument("waiting dist: mass at zero wait is not allowed");
                    }
                }
                if (!(d.values.back() <= 1.0)) {
                    throw std::invalid_argument("waiting dist: total mass exceeds 1");
                }
                for (double v : d.values) {
                    if (!std::isfinite(v)) {
                        throw std::invalid_argument("waiting dist: non-finite CDF value");
                    }
                }
                for (double k : d.knots) {
                    if (!std::isfinite(k) || k < 0.0) {
                        throw std::invalid_argument("waiting dist: knots must be finite and >= 0");
                    }
                }
            } else if constexpr (std::is_same_v<D, DefectiveWait>) {
                if (!(d.mass >= 0.0) || !(d.mass < 1.0)) {
                    throw std::invalid_argument("waiting dist: defective mass must lie in [0, 1)");
                }
                if (!(d.rate > 0.0) || !std::isfinite(d.rate)) {
                    throw std::invalid_argument("waiting dist: defective rate must be > 0");
                }
            } else {
                static_assert(std::is_same_v<D, PointMassWait>);
                if (!(d.location > 0.0) || !std::isfinite(d.location)) {
                    throw std::invalid_argument("waiting dist: point mass location must be > 0");
                }
                if (!(d.mass >= 0.0) || !(d.mass <= 1.0)) {
                    throw std::invalid_argument("waiting dist: point mass must lie in [0, 1]");
                }
            }
        },
        dist);
}

double total_mass(const WaitingDist& dist) {
    return std::visit(
        [](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ExponentialWait>) {
                return d.rate > 0.0 ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<D, PiecewiseCdf>) {
                return d.values.back();
            } else if constexpr (std::is_same_v<D, DefectiveWait>) {
                return d.mass;
            } else {
                return d.mass;
            }
        },
        dist);
}

double sample_wait(const WaitingDist& dist, RandomStream& stream) {
    const double mass = total_mass(dist);
    const double u = stream.next_uniform();
    if (u >= mass) {
        return -1.0;  // defect: no further event
    }
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ExponentialWait>) {
                return -std::log1p(-u) / d.rate;
            } else if constexpr (std::is_same_v<D, PiecewiseCdf>) {
                // Generalized inverse: first knot where the CDF reaches u.
                for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
                    if (d.values[i + 1] >= u) {
                        if (d.knots[i + 1] == d.knots[i] || d.values[i + 1] == d.values[i]) {
                            return d.knots[i + 1];
                        }
                        const double frac = (u - d.values[i]) / (d.values[i + 1] - d.values[i]);
                        return d.knots[i] + frac * (d.knots[i + 1] - d.knots[i]);
                    }
                }
                return d.knots.back();
            } else if constexpr (std::is_same_v<D, DefectiveWait>) {
                return -std::log1p(-u / d.mass) / d.rate;
            } else {
                static_assert(std::is_same_v<D, PointMassWait>);
                return d.location;
            }
        },
        dist);
}

HazardSpec::HazardSpec(std::vector<WaitingDist> dists) : dists_(std::move(dists)) {
    if (dists_.empty()) {
        throw std::invalid_argument("HazardSpec: needs at least one waiting distribution");
    }
    for (const auto& d : dists_) {
        validate_waiting_dist(d);
    }
}

const WaitingDist& HazardSpec::dist(std::size_t n) const {
    return n < dists_.size() ? dists_[n] : dists_.back();
}

}  // namespace pointproc
