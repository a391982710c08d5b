#include "pointproc/event_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pointproc {

EventSequence::EventSequence(double horizon, std::vector<double> times)
    : horizon_(horizon), times_(std::move(times)) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("EventSequence: horizon must be positive and finite");
    }
    double prev = 0.0;
    for (double t : times_) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("EventSequence: non-finite event time");
        }
        if (t <= prev) {
            throw std::invalid_argument(
                "EventSequence: event times must be strictly increasing and > 0");
        }
        if (t > horizon_) {
            throw std::invalid_argument("EventSequence: event time beyond horizon");
        }
        prev = t;
    }
}

std::size_t EventSequence::count_at(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
}

std::size_t EventSequence::count_before(double t) const {
    return static_cast<std::size_t>(
        std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
}

EventSequence EventSequence::restricted_to(double t) const {
    if (!(t > 0.0) || t > horizon_) {
        throw std::invalid_argument("EventSequence::restricted_to: t outside (0, horizon]");
    }
    std::vector<double> head(times_.begin(), times_.begin() + static_cast<long>(count_at(t)));
    return EventSequence(t, std::move(head));
}

}  // namespace pointproc
