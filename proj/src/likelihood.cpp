#include "pointproc/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pointproc/compensator.hpp"
#include "pointproc/stats.hpp"

namespace pointproc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_likelihood_ratio(const EventSequence& events, const IntensityModel& model, double t) {
    if (!(t >= 0.0) || t > events.horizon()) {
        throw std::domain_error("log_likelihood_ratio: t outside [0, horizon]");
    }
    validate_model(model);
    double log_sum = 0.0;
    for (double ti : events.times()) {
        if (ti > t) break;
        const double rate = intensity_at(model, events, ti);
        if (rate <= 0.0) {
            return kNegInf;
        }
        log_sum += std::log(rate);
    }
    return (t - compensator_value(model, events, t)) + log_sum;
}

std::size_t family_dimension(ModelFamily family) {
    switch (family) {
        case ModelFamily::constant:
            return 1;
        case ModelFamily::baseline:
            return 3;
        case ModelFamily::hawkes_const:
            return 4;
        case ModelFamily::hawkes_exp:
            return 5;
    }
    return 0;
}

std::vector<std::string> family_param_names(ModelFamily family) {
    switch (family) {
        case ModelFamily::constant:
            return {"rate"};
        case ModelFamily::baseline:
            return {"a", "b", "c"};
        case ModelFamily::hawkes_const:
            return {"a", "b", "c", "phi0"};
        case ModelFamily::hawkes_exp:
            return {"a", "b", "c", "alpha", "beta"};
    }
    return {};
}

IntensityModel make_model(ModelFamily family, std::span<const double> params) {
    if (params.size() != family_dimension(family)) {
        throw std::invalid_argument("make_model: wrong parameter count for family");
    }
    switch (family) {
        case ModelFamily::constant:
            return ConstantRate{params[0]};
        case ModelFamily::baseline:
            return DeterministicBaseline{params[0], params[1], params[2]};
        case ModelFamily::hawkes_const:
            return HawkesConst{{params[0], params[1], params[2]}, params[3]};
        case ModelFamily::hawkes_exp:
            return HawkesExp{{params[0], params[1], params[2]}, params[3], params[4]};
    }
    throw std::invalid_argument("make_model: unknown family");
}

namespace {

// Objective on the log scale; free coordinates only.
class LogScaleObjective {
  public:
    LogScaleObjective(const EventSequence& events, ModelFamily family,
                      std::vector<std::optional<double>> fixed)
        : events_(events), family_(family), fixed_(std::move(fixed)) {
        const std::size_t dim = family_dimension(family_);
        fixed_.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!fixed_[i]) {
                free_indices_.push_back(i);
            }
        }
    }

    std::size_t free_dimension() const { return free_indices_.size(); }
    const std::vector<std::size_t>& free_indices() const { return free_indices_; }

    std::vector<double> to_full(std::span<const double> theta) const {
        std::vector<double> params(family_dimension(family_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] = fixed_[i] ? *fixed_[i] : 0.0;
        }
        for (std::size_t j = 0; j < free_indices_.size(); ++j) {
            params[free_indices_[j]] = std::exp(theta[j]);
        }
        return params;
    }

    double operator()(std::span<const double> theta) const {
        const auto params = to_full(theta);
        return log_likelihood_ratio(events_, make_model(family_, params),
                                    events_.horizon());
    }

  private:
    const EventSequence& events_;
    ModelFamily family_;
    std::vector<std::optional<double>> fixed_;
    std::vector<std::size_t> free_indices_;
};

double simplex_diameter(const std::vector<std::vector<double>>& vertices) {
    double diam = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        for (std::size_t d = 0; d < vertices[i].size(); ++d) {
            diam = std::max(diam, std::abs(vertices[i][d] - vertices[0][d]));
        }
    }
    return diam;
}

}  // namespace

FitResult fit_mle(const EventSequence& events, ModelFamily family,
                  std::span<const double> init, const FitOptions& options) {
    const std::size_t dim = family_dimension(family);
    if (init.size() != dim) {
        throw std::invalid_argument("fit_mle: init has wrong dimension for family");
    }
    LogScaleObjective objective(events, family, options.fixed);

    FitResult result;
    result.family = family;
    result.initial.assign(init.begin(), init.end());

    const std::size_t n_free = objective.free_dimension();
    if (n_free == 0) {
        std::vector<double> theta;
        result.params = objective.to_full(theta);
        result.loglik = objective(theta);
        result.converged = true;
        return result;
    }

    constexpr double kFloor = 1e-8;  // log-parametrization cannot represent 0
    std::vector<double> theta0(n_free);
    for (std::size_t j = 0; j < n_free; ++j) {
        theta0[j] = std::log(std::max(init[objective.free_indices()[j]], kFloor));
    }
    const double f0 = objective(theta0);
    if (!std::isfinite(f0)) {
        throw std::invalid_argument("fit_mle: log-likelihood not finite at the initial point");
    }

    // Nelder-Mead, maximizing. Standard reflection/expansion/contraction
    // coefficients; accept-only-improvements keeps the best value monotone.
    std::vector<std::vector<double>> vertices(n_free + 1, theta0);
    std::vector<double> values(n_free + 1);
    for (std::size_t j = 0; j < n_free; ++j) {
        vertices[j + 1][j] += 0.25;
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        values[v] = objective(vertices[v]);
    }

    const auto order = [&]() {
        std::vector<std::size_t> idx(vertices.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        std::vector<std::vector<double>> vs(vertices.size());
        std::vector<double> fs(vertices.size());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            vs[r] = std::move(vertices[idx[r]]);
            fs[r] = values[idx[r]];
        }
        vertices = std::move(vs);
        values = std::move(fs);
    };
    order();

    std::size_t iteration = 0;
    for (; iteration < options.max_iterations; ++iteration) {
        const double spread = values.front() - values.back();
        if (std::isfinite(values.back()) && spread <= options.tolerance &&
            simplex_diameter(vertices) <= options.tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n_free, 0.0);
        for (std::size_t v = 0; v + 1 < vertices.size(); ++v) {
            for (std::size_t d = 0; d < n_free; ++d) {
                centroid[d] += vertices[v][d];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(n_free);
        }

        const auto blend = [&](double coef) {
            std::vector<double> point(n_free);
            for (std::size_t d = 0; d < n_free; ++d) {
                point[d] = centroid[d] + coef * (centroid[d] - vertices.back()[d]);
            }
            return point;
        };

        const auto reflected = blend(1.0);
        const double f_reflected = objective(reflected);
        if (f_reflected > values.front()) {
            const auto expanded = blend(2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded > f_reflected) {
                vertices.back() = expanded;
                values.back() = f_expanded;
            } else {
                vertices.back() = reflected;
                values.back() = f_reflected;
            }
        } else if (f_reflected > values[values.size() - 2]) {
            vertices.back() = reflected;
            values.back() = f_reflected;
        } else {
            const auto contracted = blend(f_reflected > values.back() ? 0.5 : -0.5);
            const double f_contracted = objective(contracted);
            if (f_contracted > std::max(values.back(), f_reflected)) {
                vertices.back() = contracted;
                values.back() = f_contracted;
            } else {
                // Shrink towards the best vertex.
                for (std::size_t v = 1; v < vertices.size(); ++v) {
                    for (std::size_t d = 0; d < n_free; ++d) {
                        vertices[v][d] = vertices[0][d] + 0.5 * (vertices[v][d] - vertices[0][d]);
                    }
                    values[v] = objective(vertices[v]);
                }
            }
        }
        order();
        result.objective_trace.push_back(values.front());
    }

    result.iterations = iteration;
    result.params = objective.to_full(vertices.front());
    result.loglik = values.front();
    for (std::size_t j = 0; j < n_free; ++j) {
        if (result.params[objective.free_indices()[j]] <= options.boundary_threshold) {
            result.at_boundary = true;
        }
    }
    return result;
}

std::vector<double> fit_standard_errors(const EventSequence& events, ModelFamily family,
                                        std::span<const double> params,
                                        const std::vector<std::optional<double>>& fixed) {
    const std::size_t dim = family_dimension(family);
    if (params.size() != dim) {
        throw std::invalid_argument("fit_standard_errors: wrong parameter count");
    }
    std::vector<std::optional<double>> is_fixed = fixed;
    is_fixed.resize(dim);
    std::vector<double> se(dim, 0.0);
    std::vector<double> work(params.begin(), params.end());
    const auto loglik = [&](const std::vector<double>& p) {
        return log_likelihood_ratio(events, make_model(family, p), events.horizon());
    };
    const double f_center = loglik(work);
    for (std::size_t i = 0; i < dim; ++i) {
        if (is_fixed[i]) {
            continue;
        }
        const double h_plus = std::max(1e-4 * std::abs(params[i]), 1e-6);
        work[i] = params[i] + h_plus;
        const double f_plus = loglik(work);
        work[i] = std::max(params[i] - h_plus, 0.0);
        const double h_minus = params[i] - work[i];
        const double f_minus = h_minus > 0.0 ? loglik(work) : f_center;
        work[i] = params[i];
        // Observed information diagonal: -d2 loglik / d p_i^2, second
        // difference with possibly asymmetric steps (clamped at 0).
        double second;
        if (h_minus > 0.0) {
            second = 2.0 * (h_minus * f_plus - (h_plus + h_minus) * f_center + h_plus * f_minus) /
                     (h_plus * h_minus * (h_plus + h_minus));
        } else {
            second = std::numeric_limits<double>::quiet_NaN();
        }
        const double info = -second;
        se[i] = info > 0.0 ? 1.0 / std::sqrt(info) : std::numeric_limits<double>::infinity();
    }
    return se;
}

EventSequence time_rescale(const EventSequence& events, const CompensatorPath& compensator) {
    if (compensator.last_time() < events.horizon()) {
        throw std::invalid_argument("time_rescale: compensator not defined up to the horizon");
    }
    std::vector<double> rescaled;
    rescaled.reserve(events.size());
    double prev = 0.0;
    for (double ti : events.times()) {
        const double tau = compensator.value_at(ti);
        if (!rescaled.empty() && tau <= prev) {
            throw std::runtime_error(
                "time_rescale: compensator is flat across consecutive events");
        }
        if (rescaled.empty() && tau <= 0.0) {
            throw std::runtime_error("time_rescale: compensator is 0 at the first event");
        }
        rescaled.push_back(tau);
        prev = tau;
    }
    const double new_horizon = std::max(compensator.value_at(events.horizon()), prev);
    if (!(new_horizon > 0.0)) {
        throw std::runtime_error("time_rescale: compensator vanishes on the whole horizon");
    }
    return EventSequence(new_horizon, std::move(rescaled));
}

KsReport gof_exp1(std::span<const double> waits) {
    if (waits.empty()) {
        throw std::invalid_argument("gof_exp1: empty sample");
    }
    std::vector<double> u;
    u.reserve(waits.size());
    for (double w : waits) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("gof_exp1: waits must be positive");
        }
        u.push_back(-std::expm1(-w));  // Exp(1) CDF
    }
    KsReport report;
    report.n = waits.size();
    report.statistic = ks_statistic_uniform(std::move(u));
    report.critical_value = kKs1PercentCoefficient / std::sqrt(static_cast<double>(report.n));
    report.pass = report.statistic < report.critical_value;
    return report;
}

std::vector<double> waiting_times(const EventSequence& events) {
    std::vector<double> waits;
    waits.reserve(events.size());
    double prev = 0.0;
    for (double ti : events.times()) {
        waits.push_back(ti - prev);
        prev = ti;
    }
    return waits;
}

}  // namespace pointproc
