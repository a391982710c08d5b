#include "pointproc/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace pointproc {

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.size() < 2 || grid.front() != 0.0) {
        throw std::invalid_argument("path grid must start at 0 and have at least one cell");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw std::invalid_argument("path grid must be strictly increasing");
        }
    }
}

std::vector<double> uniform_grid(double horizon, std::size_t n_steps) {
    if (!(horizon > 0.0) || n_steps < 1) {
        throw std::invalid_argument("uniform grid needs horizon > 0 and n_steps >= 1");
    }
    std::vector<double> grid(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        grid[k] = horizon * static_cast<double>(k) / static_cast<double>(n_steps);
    }
    return grid;
}

}  // namespace

GaussianPath::GaussianPath(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    validate_grid(grid_);
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("GaussianPath: one value per grid point required");
    }
    if (values_.front() != 0.0) {
        throw std::invalid_argument("GaussianPath: W_0 must be 0");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("GaussianPath: non-finite value");
        }
    }
}

VariancePath::VariancePath(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    validate_grid(grid_);
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("VariancePath: one value per grid point required");
    }
    if (values_.front() != 0.0) {
        throw std::invalid_argument("VariancePath: A_0 must be 0");
    }
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        if (!(values_[i] <= values_[i + 1])) {
            throw std::invalid_argument("VariancePath: values must be non-decreasing");
        }
    }
}

VariancePath VariancePath::linear(double horizon, std::size_t n_steps, double slope) {
    if (!(slope >= 0.0)) {
        throw std::invalid_argument("VariancePath::linear: slope must be >= 0");
    }
    auto grid = uniform_grid(horizon, n_steps);
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = slope * grid[k];
    }
    return VariancePath(std::move(grid), std::move(values));
}

VelocityPath::VelocityPath(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    validate_grid(grid_);
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("VelocityPath: one value per grid point required");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("VelocityPath: non-finite value");
        }
    }
}

VelocityPath VelocityPath::constant(double horizon, std::size_t n_steps, double value) {
    auto grid = uniform_grid(horizon, n_steps);
    std::vector<double> values(grid.size(), value);
    return VelocityPath(std::move(grid), std::move(values));
}

GaussianPath simulate_wiener_additive(const VariancePath& variance, RandomStream stream) {
    const auto grid = variance.grid();
    const auto a = variance.values();
    std::vector<double> w(grid.size());
    w[0] = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double var = a[k + 1] - a[k];
        w[k + 1] = w[k] + (var > 0.0 ? std::sqrt(var) * stream.next_normal() : 0.0);
    }
    return GaussianPath(std::vector<double>(grid.begin(), grid.end()), std::move(w));
}

double girsanov_log_ratio(const GaussianPath& path, const VelocityPath& velocity) {
    const auto grid = path.grid();
    const auto vgrid = velocity.grid();
    if (grid.size() != vgrid.size()) {
        throw std::invalid_argument("girsanov_log_ratio: grid size mismatch");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] != vgrid[k]) {
            throw std::invalid_argument("girsanov_log_ratio: grids differ");
        }
    }
    const auto w = path.values();
    const auto phi = velocity.values();
    double stochastic = 0.0;
    double quadratic = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        stochastic += phi[k] * (w[k + 1] - w[k]);
        quadratic += phi[k] * phi[k] * (grid[k + 1] - grid[k]);
    }
    return stochastic - 0.5 * quadratic;
}

VarianceEquivalenceReport variance_equivalence_check(const VariancePath& variance, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("variance_equivalence_check: tol must be > 0");
    }
    const auto grid = variance.grid();
    const auto a = variance.values();
    VarianceEquivalenceReport report;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double width = grid[k + 1] - grid[k];
        const double slope = (a[k + 1] - a[k]) / width;
        report.max_cell_width = std::max(report.max_cell_width, width);
        if (std::abs(slope - 1.0) > tol) {
            report.off_measure += width;
        }
    }
    report.verdict = report.off_measure <= report.max_cell_width ? VarianceVerdict::equivalent
                                                                 : VarianceVerdict::singular;
    return report;
}

}  // namespace pointproc
