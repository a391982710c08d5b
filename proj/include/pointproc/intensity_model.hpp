#pragma once

#include <variant>

#include "pointproc/event_sequence.hpp"

namespace pointproc {

/// Homogeneous rate lambda >= 0.
struct ConstantRate {
    double rate;
};

/// Deterministic baseline mu(t) = a + b * exp(-c t) with a, b, c >= 0.
struct DeterministicBaseline {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(double t) const;

    /// Integral of mu over [0, t].
    double integral(double t) const;
};

/// Self-exciting model with a non-decaying kernel: every past event adds a
/// permanent phi0 to the rate, lambda_t = mu(t) + phi0 * N(t-).
struct HawkesConst {
    DeterministicBaseline baseline;
    double phi0;
};

/// Standard exponentially decaying self-excitation,
/// lambda_t = mu(t) + sum over past events of alpha * exp(-beta (t - t_i)).
struct HawkesExp {
    DeterministicBaseline baseline;
    double alpha;
    double beta;
};

/// At most one event: hazard `rate` until the event, zero afterwards.
struct OneShot {
    double rate;
};

using IntensityModel =
    std::variant<ConstantRate, DeterministicBaseline, HawkesConst, HawkesExp, OneShot>;

/// Throws std::invalid_argument if any parameter breaks its sign constraint.
void validate_model(const IntensityModel& model);

/// Conditional intensity lambda_t with the left-limit convention: only events
/// strictly before t contribute, so the self-excited jump at an event time is
/// visible only from the right. Throws std::domain_error for t outside
/// [0, horizon].
double intensity_at(const IntensityModel& model, const EventSequence& history, double t);

/// Right-continuous version: events with time <= t contribute. This is the
/// value the intensity jumps to at an event, and the valid thinning bound for
/// the interval that starts at t (every variant is non-increasing between
/// events).
double intensity_right(const IntensityModel& model, const EventSequence& history, double t);

}  // namespace pointproc
