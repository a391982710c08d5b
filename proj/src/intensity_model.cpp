#include "pointproc/intensity_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pointproc {

double DeterministicBaseline::operator()(double t) const {
    return a + b * std::exp(-c * t);
}

double DeterministicBaseline::integral(double t) const {
    if (c == 0.0) {
        return (a + b) * t;
    }
    return a * t + (b / c) * (1.0 - std::exp(-c * t));
}

namespace {

void require_nonneg(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("intensity model: ") + name +
                                    " must be finite and >= 0");
    }
}

void validate_baseline(const DeterministicBaseline& b) {
    require_nonneg(b.a, "baseline a");
    require_nonneg(b.b, "baseline b");
    require_nonneg(b.c, "baseline c");
}

}  // namespace

void validate_model(const IntensityModel& model) {
    std::visit(
        [](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantRate>) {
                require_nonneg(m.rate, "rate");
            } else if constexpr (std::is_same_v<M, DeterministicBaseline>) {
                validate_baseline(m);
            } else if constexpr (std::is_same_v<M, HawkesConst>) {
                validate_baseline(m.baseline);
                require_nonneg(m.phi0, "phi0");
            } else if constexpr (std::is_same_v<M, HawkesExp>) {
                validate_baseline(m.baseline);
                require_nonneg(m.alpha, "alpha");
                if (!(m.beta > 0.0) || !std::isfinite(m.beta)) {
                    throw std::invalid_argument("intensity model: beta must be finite and > 0");
                }
            } else if constexpr (std::is_same_v<M, OneShot>) {
                if (!(m.rate > 0.0) || !std::isfinite(m.rate)) {
                    throw std::invalid_argument("intensity model: one-shot rate must be > 0");
                }
            }
        },
        model);
}

namespace {

// Shared evaluator; `count` is the number of history events considered in the
// self-exciting sums (left count for lambda_t, right count for lambda_{t+}).
double eval(const IntensityModel& model, const EventSequence& history, double t,
            std::size_t count) {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantRate>) {
                return m.rate;
            } else if constexpr (std::is_same_v<M, DeterministicBaseline>) {
                return m(t);
            } else if constexpr (std::is_same_v<M, HawkesConst>) {
                return m.baseline(t) + m.phi0 * static_cast<double>(count);
            } else if constexpr (std::is_same_v<M, HawkesExp>) {
                double excitation = 0.0;
                const auto times = history.times();
                for (std::size_t i = 0; i < count; ++i) {
                    excitation += m.alpha * std::exp(-m.beta * (t - times[i]));
                }
                return m.baseline(t) + excitation;
            } else {
                static_assert(std::is_same_v<M, OneShot>);
                return count == 0 ? m.rate : 0.0;
            }
        },
        model);
}

void check_time(const EventSequence& history, double t) {
    if (!(t >= 0.0) || t > history.horizon()) {
        throw std::domain_error("intensity: t outside [0, horizon]");
    }
}

}  // namespace

double intensity_at(const IntensityModel& model, const EventSequence& history, double t) {
    check_time(history, t);
    return eval(model, history, t, history.count_before(t));
}

double intensity_right(const IntensityModel& model, const EventSequence& history, double t) {
    check_time(history, t);
    return eval(model, history, t, history.count_at(t));
}

}  // namespace pointproc
