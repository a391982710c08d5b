#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "pointproc/random_stream.hpp"

namespace pointproc {

/// Exponential waiting time with the given rate (total mass 1).
struct ExponentialWait {
    double rate;
};

/// CDF given by (knot, value) pairs: piecewise linear between distinct knots,
/// with repeated knots encoding atoms. Knots start at 0 with value 0 (no mass
/// at zero waits), values are non-decreasing and end at the total mass <= 1.
struct PiecewiseCdf {
    std::vector<double> knots;
    std::vector<double> values;
};

/// Sub-exponential law: with probability `mass` the wait is Exponential(rate),
/// with probability 1 - mass no further event ever occurs. mass in [0, 1).
struct DefectiveWait {
    double mass = 0.0;
    double rate = 1.0;
};

/// Atom of probability `mass` at the positive wait `location`; the remaining
/// 1 - mass means no further event.
struct PointMassWait {
    double location;
    double mass;
};

using WaitingDist = std::variant<ExponentialWait, PiecewiseCdf, DefectiveWait, PointMassWait>;

/// Total probability that a next event occurs at all.
double total_mass(const WaitingDist& dist);

/// Generalized inverse-CDF sample. Returns a positive wait, or a negative
/// value as the "no further event" signal when the defect 1 - mass is drawn.
double sample_wait(const WaitingDist& dist, RandomStream& stream);

/// Per-event conditional waiting-time distributions F_n. The last entry
/// applies to every index past the end of the list.
class HazardSpec {
  public:
    explicit HazardSpec(std::vector<WaitingDist> dists);

    const WaitingDist& dist(std::size_t n) const;
    std::size_t size() const noexcept { return dists_.size(); }

  private:
    std::vector<WaitingDist> dists_;
};

/// Validates a single distribution: monotone CDF, mass <= 1, no mass at zero.
void validate_waiting_dist(const WaitingDist& dist);

}  // namespace pointproc
