#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pointproc/compensator_path.hpp"
#include "pointproc/event_sequence.hpp"
#include "pointproc/intensity_model.hpp"

namespace pointproc {

/// Log Radon-Nikodym derivative of the model law against the unit Poisson on
/// [0, t]:  int_0^t (1 - lambda_s) ds + sum_{T_i <= t} log lambda_{T_i-}.
/// The intensity at an event uses the left limit, so a self-excited jump never
/// scores its own event. Returns -infinity when the model puts zero intensity
/// at an observed event (the laws are then mutually singular on the data).
double log_likelihood_ratio(const EventSequence& events, const IntensityModel& model, double t);

enum class ModelFamily { constant, baseline, hawkes_const, hawkes_exp };

std::size_t family_dimension(ModelFamily family);
std::vector<std::string> family_param_names(ModelFamily family);

/// Builds the model for a family from its parameter vector
/// (constant: {rate}; baseline: {a,b,c}; hawkes_const: {a,b,c,phi0};
///  hawkes_exp: {a,b,c,alpha,beta}).
IntensityModel make_model(ModelFamily family, std::span<const double> params);

struct FitOptions {
    std::size_t max_iterations = 2000;
    /// Simplex stopping tolerance, applied to both the objective spread and
    /// the simplex diameter in log-parameter space.
    double tolerance = 1e-8;
    /// Fitted values at or below this are flagged as boundary solutions.
    double boundary_threshold = 1e-6;
    /// Entries hold a parameter fixed at the given value (not optimized).
    std::vector<std::optional<double>> fixed;
};

struct FitResult {
    ModelFamily family = ModelFamily::constant;
    std::vector<double> params;
    std::vector<double> initial;
    double loglik = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool at_boundary = false;
    /// Best objective value after each iteration; non-decreasing.
    std::vector<double> objective_trace;
};

/// Maximum-likelihood fit by Nelder-Mead simplex on log-parameters (enforcing
/// positivity). Deterministic given init and options; the best objective value
/// never decreases across iterations. Throws std::invalid_argument when the
/// likelihood at the initial point is not finite.
FitResult fit_mle(const EventSequence& events, ModelFamily family,
                  std::span<const double> init, const FitOptions& options = {});

/// Standard errors from the diagonal of the observed information, second
/// differences of the log-likelihood at `params`. Fixed parameters get SE 0.
std::vector<double> fit_standard_errors(const EventSequence& events, ModelFamily family,
                                        std::span<const double> params,
                                        const std::vector<std::optional<double>>& fixed = {});

/// Maps event times through the compensator: tau_i = A(T_i), horizon A(T).
/// Throws std::runtime_error when A is flat across two consecutive events,
/// which would collapse them.
EventSequence time_rescale(const EventSequence& events, const CompensatorPath& compensator);

struct KsReport {
    double statistic = 0.0;
    double critical_value = 0.0;  // 1.628 / sqrt(n), asymptotic 1% level
    std::size_t n = 0;
    bool pass = false;
};

/// One-sample Kolmogorov-Smirnov test of the waits against Exp(1).
KsReport gof_exp1(std::span<const double> waits);

/// Inter-event waits of a rescaled sequence (first wait measured from 0); the
/// censored tail beyond the last event is excluded.
std::vector<double> waiting_times(const EventSequence& events);

}  // namespace pointproc
