#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pointproc {

/// Realization of a counting process on a finite horizon: strictly increasing
/// event times, each in (0, horizon]. Immutable after construction.
class EventSequence {
  public:
    /// Validates and takes ownership of the times. Throws std::invalid_argument
    /// on a non-positive horizon, unsorted or duplicate times, or times outside
    /// (0, horizon].
    EventSequence(double horizon, std::vector<double> times);

    static EventSequence empty(double horizon) { return EventSequence(horizon, {}); }

    double horizon() const noexcept { return horizon_; }
    std::span<const double> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }

    /// N(t) = number of events with time <= t.
    std::size_t count_at(double t) const;

    /// N(t-) = number of events with time < t.
    std::size_t count_before(double t) const;

    /// Events with time <= t, re-horizoned to t.
    EventSequence restricted_to(double t) const;

  private:
    double horizon_;
    std::vector<double> times_;
};

}  // namespace pointproc
