#pragma once

#include <span>
#include <vector>

#include "pointproc/random_stream.hpp"

namespace pointproc {

/// Sampled continuous path on a strictly increasing grid starting at 0, with
/// value 0 at time 0.
class GaussianPath {
  public:
    GaussianPath(std::vector<double> grid, std::vector<double> values);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t steps() const noexcept { return grid_.size() - 1; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Non-decreasing conditional-variance path A with A_0 = 0 on the same grid
/// structure.
class VariancePath {
  public:
    VariancePath(std::vector<double> grid, std::vector<double> values);

    /// Uniform grid on [0, horizon] with n_steps cells and A_t = slope * t.
    static VariancePath linear(double horizon, std::size_t n_steps, double slope);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t steps() const noexcept { return grid_.size() - 1; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Left-continuous step interpretation: values[k] acts on [grid[k], grid[k+1]).
class VelocityPath {
  public:
    VelocityPath(std::vector<double> grid, std::vector<double> values);

    static VelocityPath constant(double horizon, std::size_t n_steps, double value);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Path with independent increments W_{t_{k+1}} - W_{t_k} ~ N(0, A_{t_{k+1}} - A_{t_k}).
GaussianPath simulate_wiener_additive(const VariancePath& variance, RandomStream stream);

/// Left-point discretization of log dP/dP0 against standard Brownian motion:
/// sum_k phi_k (W_{k+1} - W_k) - 1/2 sum_k phi_k^2 (t_{k+1} - t_k).
/// Throws std::invalid_argument when the grids differ.
double girsanov_log_ratio(const GaussianPath& path, const VelocityPath& velocity);

enum class VarianceVerdict { equivalent, singular };

struct VarianceEquivalenceReport {
    VarianceVerdict verdict = VarianceVerdict::equivalent;
    /// Total length of grid cells whose slope differs from 1 by more than tol.
    double off_measure = 0.0;
    double max_cell_width = 0.0;
};

/// Grid surrogate of the "unit slope outside a null set" criterion: the law is
/// declared equivalent to the standard one iff the cells with |A' - 1| > tol
/// together span at most one grid cell.
VarianceEquivalenceReport variance_equivalence_check(const VariancePath& variance, double tol);

}  // namespace pointproc
