#include "pointproc/markov.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pointproc {

namespace {
constexpr double kRowSumTolerance = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

MarkovModel::MarkovModel(std::size_t n_states, std::vector<double> transition,
                         std::vector<double> initial)
    : n_(n_states), p_(std::move(transition)), v0_(std::move(initial)) {
    if (n_ < 2 || n_ > 64) {
        throw std::invalid_argument("MarkovModel: state count must lie in [2, 64]");
    }
    if (p_.size() != n_ * n_ || v0_.size() != n_) {
        throw std::invalid_argument("MarkovModel: matrix or initial distribution has wrong size");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = p_[i * n_ + j];
            if (!(v >= 0.0) || !(v <= 1.0)) {
                throw std::invalid_argument("MarkovModel: entries must lie in [0, 1]");
            }
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
            throw std::invalid_argument("MarkovModel: rows must sum to 1");
        }
    }
    double v0_sum = 0.0;
    for (double v : v0_) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            throw std::invalid_argument("MarkovModel: initial weights must lie in [0, 1]");
        }
        v0_sum += v;
    }
    if (std::abs(v0_sum - 1.0) > kRowSumTolerance) {
        throw std::invalid_argument("MarkovModel: initial distribution must sum to 1");
    }
}

std::vector<double> MarkovModel::apply(std::span<const double> z) const {
    if (z.size() != n_) {
        throw std::invalid_argument("MarkovModel::apply: vector has wrong dimension");
    }
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            acc += p_[i * n_ + j] * z[j];
        }
        out[i] = acc;
    }
    return out;
}

namespace {

void validate_path(const StatePath& path, std::size_t n_states) {
    if (path.empty()) {
        throw std::invalid_argument("state path must be non-empty");
    }
    for (std::size_t x : path) {
        if (x >= n_states) {
            throw std::invalid_argument("state path contains an out-of-range index");
        }
    }
}

}  // namespace

double markov_log_ratio(const StatePath& path, const MarkovModel& p, const MarkovModel& p0) {
    if (p.n_states() != p0.n_states()) {
        throw std::invalid_argument("markov_log_ratio: state counts differ");
    }
    for (std::size_t i = 0; i < p.n_states(); ++i) {
        if (std::abs(p.initial()[i] - p0.initial()[i]) > kRowSumTolerance) {
            throw std::invalid_argument(
                "markov_log_ratio: models must share the initial distribution");
        }
    }
    validate_path(path, p.n_states());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double num = p.p(path[i], path[i + 1]);
        const double den = p0.p(path[i], path[i + 1]);
        if (den == 0.0 && num > 0.0) {
            throw std::runtime_error(
                "markov_log_ratio: observed transition is impossible under the reference chain "
                "(absolute continuity violated)");
        }
        if (num == 0.0) {
            return kNegInf;  // impossible under P, defined under P0 (or under both)
        }
        sum += std::log(num / den);
    }
    return sum;
}

namespace {

// Support masks: bit j of row i says the m-step transition i -> j is possible.
using SupportMatrix = std::vector<std::uint64_t>;

SupportMatrix support_of(const MarkovModel& m) {
    SupportMatrix s(m.n_states(), 0);
    for (std::size_t i = 0; i < m.n_states(); ++i) {
        for (std::size_t j = 0; j < m.n_states(); ++j) {
            if (m.p(i, j) > 0.0) {
                s[i] |= std::uint64_t{1} << j;
            }
        }
    }
    return s;
}

SupportMatrix bool_product(const SupportMatrix& a, const SupportMatrix& b) {
    SupportMatrix out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t row = a[i];
        while (row != 0) {
            const unsigned k = static_cast<unsigned>(std::countr_zero(row));
            out[i] |= b[k];
            row &= row - 1;
        }
    }
    return out;
}

std::optional<AbsContinuityWitness> violation(const SupportMatrix& p, const SupportMatrix& p0,
                                              std::size_t power) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::uint64_t extra = p[i] & ~p0[i];
        if (extra != 0) {
            return AbsContinuityWitness{power, i,
                                        static_cast<std::size_t>(std::countr_zero(extra))};
        }
    }
    return std::nullopt;
}

}  // namespace

AbsContinuityReport abs_continuity_check(const MarkovModel& p, const MarkovModel& p0) {
    if (p.n_states() != p0.n_states()) {
        throw std::invalid_argument("abs_continuity_check: state counts differ");
    }
    const SupportMatrix sp1 = support_of(p);
    const SupportMatrix sp01 = support_of(p0);
    SupportMatrix sp = sp1;
    SupportMatrix sp0 = sp01;
    std::vector<std::pair<SupportMatrix, SupportMatrix>> seen;
    AbsContinuityReport report;
    const std::size_t max_power = 2 * p.n_states();
    for (std::size_t m = 1; m <= max_power; ++m) {
        report.powers_checked = m;
        if (auto w = violation(sp, sp0, m)) {
            report.pass = false;
            report.witness = w;
            return report;
        }
        for (const auto& [prev_p, prev_p0] : seen) {
            if (prev_p == sp && prev_p0 == sp0) {
                return report;  // support pair repeats; all further powers repeat too
            }
        }
        seen.emplace_back(sp, sp0);
        sp = bool_product(sp, sp1);
        sp0 = bool_product(sp0, sp01);
    }
    return report;
}

std::vector<double> markov_martingale_residual(const StatePath& path, const MarkovModel& model,
                                               std::span<const double> z) {
    validate_path(path, model.n_states());
    if (z.size() != model.n_states()) {
        throw std::invalid_argument("markov_martingale_residual: z has wrong dimension");
    }
    for (double v : z) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("markov_martingale_residual: z must be finite");
        }
    }
    const std::vector<double> pz = model.apply(z);
    std::vector<double> residuals;
    residuals.reserve(path.size());
    double compensator = 0.0;
    residuals.push_back(0.0);  // M_0
    for (std::size_t m = 1; m < path.size(); ++m) {
        compensator += pz[path[m - 1]] - z[path[m - 1]];
        residuals.push_back(z[path[m]] - z[path[0]] - compensator);
    }
    return residuals;
}

MarkovFit fit_markov(const std::vector<StatePath>& paths, std::size_t n_states) {
    if (paths.empty()) {
        throw std::invalid_argument("fit_markov: no paths given");
    }
    if (n_states < 2 || n_states > 64) {
        throw std::invalid_argument("fit_markov: state count must lie in [2, 64]");
    }
    std::vector<double> counts(n_states * n_states, 0.0);
    std::vector<double> initial(n_states, 0.0);
    for (const StatePath& path : paths) {
        validate_path(path, n_states);
        initial[path.front()] += 1.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            counts[path[i] * n_states + path[i + 1]] += 1.0;
        }
    }
    std::vector<bool> undetermined(n_states, false);
    for (std::size_t i = 0; i < n_states; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n_states; ++j) {
            row_sum += counts[i * n_states + j];
        }
        if (row_sum == 0.0) {
            undetermined[i] = true;
            for (std::size_t j = 0; j < n_states; ++j) {
                counts[i * n_states + j] = 1.0 / static_cast<double>(n_states);
            }
        } else {
            for (std::size_t j = 0; j < n_states; ++j) {
                counts[i * n_states + j] /= row_sum;
            }
        }
    }
    const double total_paths = static_cast<double>(paths.size());
    for (double& w : initial) {
        w /= total_paths;
    }
    return MarkovFit{MarkovModel(n_states, std::move(counts), std::move(initial)),
                     std::move(undetermined)};
}

StatePath simulate_markov(const MarkovModel& model, std::size_t n_steps, RandomStream stream) {
    const auto draw = [&](std::span<const double> weights) {
        const double u = stream.next_uniform();
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
            acc += weights[j];
            if (u <= acc) {
                return j;
            }
        }
        return weights.size() - 1;
    };
    StatePath path;
    path.reserve(n_steps + 1);
    path.push_back(draw(model.initial()));
    for (std::size_t step = 0; step < n_steps; ++step) {
        const std::size_t from = path.back();
        path.push_back(draw(model.transition().subspan(from * model.n_states(), model.n_states())));
    }
    return path;
}

}  // namespace pointproc
