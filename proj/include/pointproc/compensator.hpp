#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pointproc/compensator_path.hpp"
#include "pointproc/event_sequence.hpp"
#include "pointproc/hazard_spec.hpp"
#include "pointproc/intensity_model.hpp"
#include "pointproc/parallel.hpp"
#include "pointproc/random_stream.hpp"

namespace pointproc {

/// Piecewise-constant rate path on [0, domain_end]; cells are left-closed.
class IntensityPath {
  public:
    IntensityPath(std::vector<double> breakpoints, std::vector<double> values);

    double value_at(double t) const;
    double domain_end() const noexcept { return breakpoints_.back(); }

    /// Exact integral over [0, t].
    double integral(double t) const;

    /// The integral as a piecewise-linear path.
    CompensatorPath integral_path() const;

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }

  private:
    std::vector<double> breakpoints_;  // cell edges, breakpoints_[0] = 0
    std::vector<double> values_;       // one value per cell
};

/// Mean-intensity path from the integrated hazard of the waiting-time
/// distributions: on the n-th inter-event interval the path accumulates
/// the hazard integral of F_n, jumping by p / (1 - F(x-)) at traversed atoms.
/// Throws std::runtime_error if some F_n reaches total mass 1 strictly before
/// the observed waiting time (the hazard integral diverges there).
CompensatorPath ihf_compensator(const HazardSpec& spec, const EventSequence& events);

/// Exact integrated intensity A_t = int_0^t lambda_s ds for the given
/// realized history; closed form for every model variant.
double compensator_value(const IntensityModel& model, const EventSequence& events, double t);

/// A_t sampled on the union of the regular grid {0, h, 2h, ...}, the event
/// times and the horizon; values are the exact closed-form integrals.
CompensatorPath model_compensator(const IntensityModel& model, const EventSequence& events,
                                  double grid_step);

/// Dyadic predictable approximation of A_t at level n: the sum over the 2^n
/// cells of [0, t] of the one-cell predicted increment lambda(left+) * dt.
/// Exact for constant rates; first-order in the cell width otherwise.
double dyadic_approximation(const IntensityModel& model, const EventSequence& events, double t,
                            int level);

/// Monte Carlo estimate of P(at least one event in (t, t+h] | history)/h with
/// the history frozen at t. Uses stream indices [stream_index, stream_index + n_mc).
double instantaneous_rate_estimate(const IntensityModel& model, const EventSequence& history,
                                   double t, double h, std::size_t n_mc, std::uint64_t seed,
                                   std::uint64_t stream_index = 0, Exec exec = Exec::parallel);

/// Evaluates the compensator of one path at one time.
using CompensatorFn = std::function<double(const EventSequence& path, double t)>;

/// History functionals evaluated at the window start; measurable there.
struct ProbeSpec {
    enum class Kind { one, count_equals, count_at_least };
    Kind kind = Kind::one;
    std::size_t k = 0;

    double operator()(const EventSequence& path, double s) const;
    std::string describe() const;
};

struct ProbeResult {
    std::string probe;
    double window_start = 0.0;
    double window_end = 0.0;
    double mean = 0.0;
    double se = 0.0;
    double z = 0.0;
    std::size_t n_effective = 0;
    bool skipped = false;  // probe vanished on the whole ensemble
    bool pass = false;
};

struct MartingaleTestReport {
    std::vector<ProbeResult> probes;
    double threshold = 3.0;
    std::size_t n_paths = 0;
    bool pass = false;  // every evaluated probe within the threshold, none degenerate-only
};

/// Tests E[(N_t - A_t) - (N_s - A_s)] g = 0 for each window (s, t) and probe g.
/// Per-path samples are reduced in path order, so the verdict is independent
/// of the execution mode. Throws std::invalid_argument on an empty ensemble.
MartingaleTestReport martingale_residual_test(
    const std::vector<EventSequence>& ensemble, const CompensatorFn& compensator,
    const std::vector<std::pair<double, double>>& windows, const std::vector<ProbeSpec>& probes,
    double threshold = 3.0, Exec exec = Exec::parallel);

/// z-score of E[int C dN] - E[int C dA] for the generator
/// C_u = 1(s < u <= t) 1(N_s = k).
double predictable_projection_check(const std::vector<EventSequence>& ensemble,
                                    const CompensatorFn& compensator, double s, double t,
                                    std::size_t k, Exec exec = Exec::parallel);

/// Look-ahead rate of the two-level rule: 1 when the window (t, t+a] contains
/// an event, 2 when it is empty. Defined for t in [0, horizon - a].
IntensityPath anticipative_intensity(const EventSequence& events, double a);

struct AnticipativityReport {
    MartingaleTestReport anticipative;  // expected to fail
    MartingaleTestReport control;       // unit compensator, expected to pass
    double drift_mean = 0.0;
    double drift_se = 0.0;
    double expected_drift = 0.0;  // -t * exp(-a)
    double a = 0.0;
    double horizon = 0.0;
    double t = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;

    /// True when the look-ahead compensator failed the martingale test, the
    /// control passed, and the measured drift matches -t e^{-a} within 3 SE.
    bool demonstrated() const;
};

/// Simulates unit-Poisson paths under the reference measure, compensates them
/// with the integral of the look-ahead intensity, and shows that N - A drifts
/// by -t e^{-a} while the honest compensator A = t does not drift.
AnticipativityReport anticipativity_report(std::size_t n_paths, double a, double horizon,
                                           std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace pointproc
