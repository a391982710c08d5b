#include "pointproc/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pointproc {

namespace {

// Intensity of `model` at time t (right limit) given fixed events plus the
// extra accepted events in `extra`, all of which precede t.
double continuation_intensity(const IntensityModel& model, const EventSequence& history,
                              const std::vector<double>& extra, double t) {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            const std::size_t count = history.count_at(t) + extra.size();
            if constexpr (std::is_same_v<M, ConstantRate>) {
                return m.rate;
            } else if constexpr (std::is_same_v<M, DeterministicBaseline>) {
                return m(t);
            } else if constexpr (std::is_same_v<M, HawkesConst>) {
                return m.baseline(t) + m.phi0 * static_cast<double>(count);
            } else if constexpr (std::is_same_v<M, HawkesExp>) {
                double excitation = 0.0;
                for (double ti : history.times()) {
                    if (ti > t) break;
                    excitation += m.alpha * std::exp(-m.beta * (t - ti));
                }
                for (double ti : extra) {
                    excitation += m.alpha * std::exp(-m.beta * (t - ti));
                }
                return m.baseline(t) + excitation;
            } else {
                static_assert(std::is_same_v<M, OneShot>);
                return count == 0 ? m.rate : 0.0;
            }
        },
        model);
}

}  // namespace

std::vector<double> simulate_continuation(const IntensityModel& model,
                                          const EventSequence& history, double from, double to,
                                          RandomStream& stream, bool stop_at_first) {
    std::vector<double> accepted;
    double t = from;
    while (true) {
        const double bound = continuation_intensity(model, history, accepted, t);
        if (!(bound > 0.0)) {
            break;  // the intensity can only decrease until the next event; none can come
        }
        const double wait = stream.next_exponential(bound);
        const double candidate = t + wait;
        if (candidate > to) {
            break;
        }
        const double rate = continuation_intensity(model, history, accepted, candidate);
        if (stream.next_uniform() * bound <= rate) {
            accepted.push_back(candidate);
            if (stop_at_first) {
                break;
            }
            if (history.size() + accepted.size() > kExplosionGuard) {
                throw std::runtime_error(
                    "simulate: explosion guard tripped (more than 1e7 events on one path)");
            }
        }
        t = candidate;
    }
    return accepted;
}

EventSequence simulate_thinning(const IntensityModel& model, double horizon,
                                RandomStream stream) {
    validate_model(model);
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("simulate_thinning: horizon must be positive and finite");
    }
    const EventSequence no_history = EventSequence::empty(horizon);
    std::vector<double> times = simulate_continuation(model, no_history, 0.0, horizon, stream);
    return EventSequence(horizon, std::move(times));
}

EventSequence simulate_from_hazard(const HazardSpec& spec, double horizon,
                                   RandomStream stream) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("simulate_from_hazard: horizon must be positive and finite");
    }
    std::vector<double> times;
    double t = 0.0;
    for (std::size_t n = 0;; ++n) {
        const double wait = sample_wait(spec.dist(n), stream);
        if (wait < 0.0) {
            break;  // defect drawn: no further event
        }
        t += wait;
        if (t > horizon) {
            break;
        }
        times.push_back(t);
        if (times.size() > kExplosionGuard) {
            throw std::runtime_error(
                "simulate: explosion guard tripped (more than 1e7 events on one path)");
        }
    }
    return EventSequence(horizon, std::move(times));
}

std::vector<EventSequence> simulate_ensemble(const IntensityModel& model, double horizon,
                                             std::size_t n_paths, std::uint64_t seed, Exec exec,
                                             std::uint64_t first_stream) {
    if (n_paths < 1) {
        throw std::invalid_argument("simulate_ensemble: n_paths must be >= 1");
    }
    return parallel_map<EventSequence>(n_paths, exec, [&](std::size_t i) {
        return simulate_thinning(model, horizon, RandomStream(seed, first_stream + i));
    });
}

std::vector<EventSequence> simulate_ensemble(const HazardSpec& spec, double horizon,
                                             std::size_t n_paths, std::uint64_t seed, Exec exec,
                                             std::uint64_t first_stream) {
    if (n_paths < 1) {
        throw std::invalid_argument("simulate_ensemble: n_paths must be >= 1");
    }
    return parallel_map<EventSequence>(n_paths, exec, [&](std::size_t i) {
        return simulate_from_hazard(spec, horizon, RandomStream(seed, first_stream + i));
    });
}

}  // namespace pointproc
