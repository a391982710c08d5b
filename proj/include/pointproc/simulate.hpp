#pragma once

#include <cstdint>
#include <vector>

#include "pointproc/event_sequence.hpp"
#include "pointproc/hazard_spec.hpp"
#include "pointproc/intensity_model.hpp"
#include "pointproc/parallel.hpp"
#include "pointproc/random_stream.hpp"

namespace pointproc {

/// Paths are aborted with std::runtime_error once they exceed this many
/// events; the self-exciting variants grow exponentially in the horizon when
/// the kernel does not decay, and bad parameters should fail loudly rather
/// than fill memory.
inline constexpr std::size_t kExplosionGuard = 10'000'000;

/// Exact Ogata-style thinning sampler. Valid because every model variant has a
/// non-increasing intensity between events, so the post-event intensity bounds
/// the path until the next candidate.
EventSequence simulate_thinning(const IntensityModel& model, double horizon,
                                RandomStream stream);

/// Continuation of a fixed history: simulates events of `model` on (from, to]
/// given the events of `history` up to `from`, returning only the new events.
/// With stop_at_first, returns after the first accepted event.
std::vector<double> simulate_continuation(const IntensityModel& model,
                                          const EventSequence& history, double from, double to,
                                          RandomStream& stream, bool stop_at_first = false);

/// Waiting-time inversion sampler: U_{n+1} ~ F_n given n prior events.
EventSequence simulate_from_hazard(const HazardSpec& spec, double horizon,
                                   RandomStream stream);

/// Ensemble of independent paths; path i uses stream index `first_stream + i`,
/// so the result is identical for every execution mode and thread count.
std::vector<EventSequence> simulate_ensemble(const IntensityModel& model, double horizon,
                                             std::size_t n_paths, std::uint64_t seed,
                                             Exec exec = Exec::parallel,
                                             std::uint64_t first_stream = 0);

std::vector<EventSequence> simulate_ensemble(const HazardSpec& spec, double horizon,
                                             std::size_t n_paths, std::uint64_t seed,
                                             Exec exec = Exec::parallel,
                                             std::uint64_t first_stream = 0);

}  // namespace pointproc
