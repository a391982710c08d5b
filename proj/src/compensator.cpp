#include "pointproc/compensator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pointproc/simulate.hpp"
#include "pointproc/stats.hpp"

namespace pointproc {

IntensityPath::IntensityPath(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("IntensityPath: need n+1 edges for n cells");
    }
    if (breakpoints_.front() != 0.0) {
        throw std::invalid_argument("IntensityPath: first edge must be 0");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw std::invalid_argument("IntensityPath: edges must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("IntensityPath: rates must be finite and >= 0");
        }
    }
}

double IntensityPath::value_at(double t) const {
    if (!(t >= 0.0) || t > breakpoints_.back()) {
        throw std::domain_error("IntensityPath: t outside [0, domain end]");
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    std::size_t cell = static_cast<std::size_t>(it - breakpoints_.begin());
    cell = std::min(cell - 1, values_.size() - 1);
    return values_[cell];
}

double IntensityPath::integral(double t) const {
    if (!(t >= 0.0) || t > breakpoints_.back()) {
        throw std::domain_error("IntensityPath: t outside [0, domain end]");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double hi = std::min(breakpoints_[i + 1], t);
        if (hi <= breakpoints_[i]) {
            break;
        }
        acc += values_[i] * (hi - breakpoints_[i]);
    }
    return acc;
}

CompensatorPath IntensityPath::integral_path() const {
    CompensatorPath::Builder builder;
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        acc += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
        builder.linear_to(breakpoints_[i + 1], acc);
    }
    return builder.finish();
}

namespace {

[[noreturn]] void throw_hazard_divergence() {
    throw std::runtime_error(
        "ihf_compensator: waiting-time distribution reaches mass 1 strictly before the "
        "observed waiting time (hazard integral diverges)");
}

// Appends the integrated hazard of F over the local span (0, u_end] to the
// builder, shifted to start at absolute time t0. Atoms met at local position x
// add p / (1 - F(x-)); an atom may exhaust the mass exactly at u_end (that is
// the arrival itself), anywhere earlier it is an inconsistency.
void append_hazard(CompensatorPath::Builder& builder, const WaitingDist& dist, double t0,
                   double u_end) {
    const double end_time = t0 + u_end;
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ExponentialWait>) {
                if (d.rate == 0.0) {
                    builder.constant_to(end_time);
                } else {
                    builder.linear_to(end_time, builder.current_value() + d.rate * u_end);
                }
            } else if constexpr (std::is_same_v<D, DefectiveWait>) {
                if (d.mass == 0.0) {
                    builder.constant_to(end_time);
                    return;
                }
                // H(u) = -log(1 - p(1 - e^{-ru})), sampled on a fixed sub-grid;
                // exact at the sub-knots, linear in between.
                constexpr int kSubCells = 16;
                const double base = builder.current_value();
                for (int j = 1; j <= kSubCells; ++j) {
                    const double u = u_end * static_cast<double>(j) / kSubCells;
                    const double cdf = -d.mass * std::expm1(-d.rate * u);
                    builder.linear_to(t0 + u, base - std::log1p(-cdf));
                }
            } else if constexpr (std::is_same_v<D, PointMassWait>) {
                if (d.location > u_end) {
                    builder.constant_to(end_time);
                    return;
                }
                builder.constant_to(t0 + d.location);
                builder.jump(d.mass);  // F(x-) = 0 here
                if (d.mass == 1.0 && d.location < u_end) {
                    throw_hazard_divergence();
                }
                builder.constant_to(end_time);
            } else {
                static_assert(std::is_same_v<D, PiecewiseCdf>);
                for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
                    const double x_lo = d.knots[i];
                    const double x_hi = d.knots[i + 1];
                    const double f_lo = d.values[i];
                    const double f_hi = d.values[i + 1];
                    if (x_lo > u_end) {
                        break;
                    }
                    if (x_lo == x_hi) {
                        if (f_hi > f_lo) {  // atom at x_lo
                            if (x_lo > u_end) {
                                break;
                            }
                            builder.constant_to(t0 + x_lo);
                            builder.jump((f_hi - f_lo) / (1.0 - f_lo));
                            if (f_hi == 1.0) {
                                if (x_lo < u_end) {
                                    throw_hazard_divergence();
                                }
                                break;
                            }
                        }
                        continue;
                    }
                    if (f_hi == f_lo) {  // flat stretch, no hazard
                        builder.constant_to(t0 + std::min(x_hi, u_end));
                        continue;
                    }
                    // Continuous rise; cut at u_end if the arrival lands inside.
                    const double cut = std::min(x_hi, u_end);
                    const double f_cut =
                        f_lo + (f_hi - f_lo) * (cut - x_lo) / (x_hi - x_lo);
                    if (f_cut >= 1.0) {
                        // A CDF rising continuously to 1 has unbounded hazard.
                        throw_hazard_divergence();
                    }
                    const double increment = std::log((1.0 - f_lo) / (1.0 - f_cut));
                    builder.linear_to(t0 + cut, builder.current_value() + increment);
                }
                builder.constant_to(end_time);
            }
        },
        dist);
}

}  // namespace

CompensatorPath ihf_compensator(const HazardSpec& spec, const EventSequence& events) {
    CompensatorPath::Builder builder;
    const auto times = events.times();
    double t_prev = 0.0;
    for (std::size_t n = 0; n <= times.size(); ++n) {
        const double t_next = n < times.size() ? times[n] : events.horizon();
        if (t_next > t_prev) {
            append_hazard(builder, spec.dist(n), t_prev, t_next - t_prev);
        }
        t_prev = t_next;
    }
    return builder.finish();
}

double compensator_value(const IntensityModel& model, const EventSequence& events, double t) {
    if (!(t >= 0.0) || t > events.horizon()) {
        throw std::domain_error("compensator_value: t outside [0, horizon]");
    }
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantRate>) {
                return m.rate * t;
            } else if constexpr (std::is_same_v<M, DeterministicBaseline>) {
                return m.integral(t);
            } else if constexpr (std::is_same_v<M, HawkesConst>) {
                double shot = 0.0;
                for (double ti : events.times()) {
                    if (ti >= t) break;
                    shot += t - ti;
                }
                return m.baseline.integral(t) + m.phi0 * shot;
            } else if constexpr (std::is_same_v<M, HawkesExp>) {
                double shot = 0.0;
                for (double ti : events.times()) {
                    if (ti >= t) break;
                    shot += -std::expm1(-m.beta * (t - ti));
                }
                return m.baseline.integral(t) + (m.alpha / m.beta) * shot;
            } else {
                static_assert(std::is_same_v<M, OneShot>);
                const auto times = events.times();
                return times.empty() ? m.rate * t : m.rate * std::min(t, times[0]);
            }
        },
        model);
}

CompensatorPath model_compensator(const IntensityModel& model, const EventSequence& events,
                                  double grid_step) {
    if (!(grid_step > 0.0)) {
        throw std::invalid_argument("model_compensator: grid step must be > 0");
    }
    validate_model(model);
    std::vector<double> grid;
    for (double t = 0.0; t < events.horizon(); t += grid_step) {
        grid.push_back(t);
    }
    grid.push_back(events.horizon());
    grid.insert(grid.end(), events.times().begin(), events.times().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    CompensatorPath::Builder builder;
    for (double t : grid) {
        if (t == 0.0) continue;
        // The closed forms are monotone; the max shields the builder from
        // one-ulp rounding inversions between nearby grid points.
        builder.linear_to(t, std::max(compensator_value(model, events, t),
                                      builder.current_value()));
    }
    return builder.finish();
}

double dyadic_approximation(const IntensityModel& model, const EventSequence& events, double t,
                            int level) {
    if (level < 0 || level > 30) {
        throw std::invalid_argument("dyadic_approximation: level must be in [0, 30]");
    }
    if (!(t > 0.0) || t > events.horizon()) {
        throw std::domain_error("dyadic_approximation: t outside (0, horizon]");
    }
    const std::size_t cells = std::size_t{1} << level;
    const double inv = 1.0 / static_cast<double>(cells);
    double sum = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        const double lo = t * (static_cast<double>(k) * inv);
        const double hi = k + 1 == cells ? t : t * (static_cast<double>(k + 1) * inv);
        sum += intensity_right(model, events, lo) * (hi - lo);
    }
    return sum;
}

double instantaneous_rate_estimate(const IntensityModel& model, const EventSequence& history,
                                   double t, double h, std::size_t n_mc, std::uint64_t seed,
                                   std::uint64_t stream_index, Exec exec) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("instantaneous_rate_estimate: h must be > 0");
    }
    if (n_mc < 1) {
        throw std::invalid_argument("instantaneous_rate_estimate: n_mc must be >= 1");
    }
    if (!(t >= 0.0)) {
        throw std::domain_error("instantaneous_rate_estimate: t must be >= 0");
    }
    validate_model(model);
    // Freeze the history at t; continuations run on (t, t+h].
    std::vector<double> head;
    for (double ti : history.times()) {
        if (ti > t) break;
        head.push_back(ti);
    }
    const EventSequence frozen(std::max(history.horizon(), t + h), std::move(head));
    const std::vector<double> hits = parallel_map<double>(n_mc, exec, [&](std::size_t i) {
        RandomStream stream(seed, stream_index + i);
        const auto fresh =
            simulate_continuation(model, frozen, t, t + h, stream, /*stop_at_first=*/true);
        return fresh.empty() ? 0.0 : 1.0;
    });
    return mean_se(hits).mean / h;
}

double ProbeSpec::operator()(const EventSequence& path, double s) const {
    switch (kind) {
        case Kind::one:
            return 1.0;
        case Kind::count_equals:
            return path.count_at(s) == k ? 1.0 : 0.0;
        case Kind::count_at_least:
            return path.count_at(s) >= k ? 1.0 : 0.0;
    }
    return 0.0;
}

std::string ProbeSpec::describe() const {
    switch (kind) {
        case Kind::one:
            return "1";
        case Kind::count_equals:
            return "N_s == " + std::to_string(k);
        case Kind::count_at_least:
            return "N_s >= " + std::to_string(k);
    }
    return "?";
}

namespace {

struct WindowSample {
    double increment = 0.0;   // (N_t - A_t) - (N_s - A_s)
    std::size_t count_s = 0;  // N_s, all probes are functions of it
};

double finite_z(double mean, double se) {
    if (se > 0.0) {
        return mean / se;
    }
    return mean == 0.0 ? 0.0 : std::copysign(1e300, mean);
}

}  // namespace

MartingaleTestReport martingale_residual_test(
    const std::vector<EventSequence>& ensemble, const CompensatorFn& compensator,
    const std::vector<std::pair<double, double>>& windows, const std::vector<ProbeSpec>& probes,
    double threshold, Exec exec) {
    if (ensemble.empty()) {
        throw std::invalid_argument("martingale_residual_test: empty ensemble");
    }
    if (windows.empty() || probes.empty()) {
        throw std::invalid_argument("martingale_residual_test: need at least one window and probe");
    }
    for (const auto& [s, t] : windows) {
        if (!(s >= 0.0) || !(s < t)) {
            throw std::invalid_argument("martingale_residual_test: windows need 0 <= s < t");
        }
    }

    const std::size_t n = ensemble.size();
    const std::size_t n_windows = windows.size();
    const auto cells = parallel_map<std::vector<WindowSample>>(n, exec, [&](std::size_t i) {
        const EventSequence& path = ensemble[i];
        std::vector<WindowSample> row(n_windows);
        for (std::size_t w = 0; w < n_windows; ++w) {
            const auto [s, t] = windows[w];
            WindowSample cell;
            const double dn =
                static_cast<double>(path.count_at(t)) - static_cast<double>(path.count_at(s));
            const double da = compensator(path, t) - compensator(path, s);
            cell.increment = dn - da;
            cell.count_s = path.count_at(s);
            row[w] = cell;
        }
        return row;
    });

    MartingaleTestReport report;
    report.threshold = threshold;
    report.n_paths = n;
    std::vector<double> samples(n);
    bool any_evaluated = false;
    bool all_pass = true;
    for (std::size_t w = 0; w < n_windows; ++w) {
        for (const ProbeSpec& probe : probes) {
            std::size_t effective = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double g = 1.0;
                if (probe.kind == ProbeSpec::Kind::count_equals) {
                    g = cells[i][w].count_s == probe.k ? 1.0 : 0.0;
                } else if (probe.kind == ProbeSpec::Kind::count_at_least) {
                    g = cells[i][w].count_s >= probe.k ? 1.0 : 0.0;
                }
                if (g != 0.0) {
                    ++effective;
                }
                samples[i] = cells[i][w].increment * g;
            }
            ProbeResult result;
            result.probe = probe.describe();
            result.window_start = windows[w].first;
            result.window_end = windows[w].second;
            result.n_effective = effective;
            if (effective == 0) {
                result.skipped = true;
                result.pass = false;
            } else {
                const MeanSe stat = mean_se(samples);
                result.mean = stat.mean;
                result.se = stat.se;
                result.z = finite_z(stat.mean, stat.se);
                result.pass = std::abs(result.z) <= threshold;
                any_evaluated = true;
                all_pass = all_pass && result.pass;
            }
            report.probes.push_back(std::move(result));
        }
    }
    report.pass = any_evaluated && all_pass;
    return report;
}

double predictable_projection_check(const std::vector<EventSequence>& ensemble,
                                    const CompensatorFn& compensator, double s, double t,
                                    std::size_t k, Exec exec) {
    if (s == t) {
        return 0.0;  // empty window: both sides vanish identically
    }
    ProbeSpec probe{ProbeSpec::Kind::count_equals, k};
    const auto report =
        martingale_residual_test(ensemble, compensator, {{s, t}}, {probe}, 3.0, exec);
    return report.probes.front().skipped ? 0.0 : report.probes.front().z;
}

IntensityPath anticipative_intensity(const EventSequence& events, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("anticipative_intensity: a must be positive and finite");
    }
    if (a >= events.horizon()) {
        throw std::domain_error("anticipative_intensity: a must be smaller than the horizon");
    }
    const double domain_end = events.horizon() - a;

    // lambda = 1 exactly on the union of [T_i - a, T_i); 2 elsewhere.
    std::vector<std::pair<double, double>> low;
    for (double ti : events.times()) {
        const double start = std::max(ti - a, 0.0);
        if (start > domain_end) {
            break;
        }
        if (!low.empty() && start <= low.back().second) {
            low.back().second = std::max(low.back().second, ti);
        } else {
            low.emplace_back(start, ti);
        }
    }

    std::vector<double> edges{0.0};
    std::vector<double> values;
    double pos = 0.0;
    for (const auto& [start, stop] : low) {
        if (pos >= domain_end) {
            break;
        }
        if (start > pos) {
            edges.push_back(std::min(start, domain_end));
            values.push_back(2.0);
            pos = edges.back();
            if (pos >= domain_end) {
                break;
            }
        }
        const double cut = std::min(stop, domain_end);
        if (cut > pos) {
            edges.push_back(cut);
            values.push_back(1.0);
            pos = cut;
        }
    }
    if (pos < domain_end) {
        edges.push_back(domain_end);
        values.push_back(2.0);
    }
    return IntensityPath(std::move(edges), std::move(values));
}

bool AnticipativityReport::demonstrated() const {
    return !anticipative.pass && control.pass &&
           std::abs(drift_mean - expected_drift) <= 3.0 * drift_se;
}

AnticipativityReport anticipativity_report(std::size_t n_paths, double a, double horizon,
                                           std::uint64_t seed, Exec exec) {
    if (!(a > 0.0) || !(horizon > a)) {
        throw std::domain_error("anticipativity_report: need 0 < a < horizon");
    }
    if (n_paths < 2) {
        throw std::invalid_argument("anticipativity_report: need at least 2 paths");
    }
    const double t_eval = horizon - a;
    const auto ensemble =
        simulate_ensemble(IntensityModel{ConstantRate{1.0}}, horizon, n_paths, seed, exec);

    const CompensatorFn look_ahead = [a](const EventSequence& path, double t) {
        return anticipative_intensity(path, a).integral(t);
    };
    const CompensatorFn unit = [](const EventSequence&, double t) { return t; };
    const std::vector<std::pair<double, double>> windows{{0.0, t_eval}};
    const std::vector<ProbeSpec> probes{ProbeSpec{ProbeSpec::Kind::one, 0}};

    AnticipativityReport report;
    report.anticipative = martingale_residual_test(ensemble, look_ahead, windows, probes, 3.0, exec);
    report.control = martingale_residual_test(ensemble, unit, windows, probes, 3.0, exec);
    report.drift_mean = report.anticipative.probes.front().mean;
    report.drift_se = report.anticipative.probes.front().se;
    report.expected_drift = -t_eval * std::exp(-a);
    report.a = a;
    report.horizon = horizon;
    report.t = t_eval;
    report.n_paths = n_paths;
    report.seed = seed;
    return report;
}

}  // namespace pointproc
