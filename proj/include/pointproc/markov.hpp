#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pointproc/random_stream.hpp"

namespace pointproc {

/// Finite-state chain: N x N row-stochastic transition matrix plus an initial
/// distribution. N is capped at 64 so brute-force path enumeration stays
/// affordable in the exact oracles.
class MarkovModel {
  public:
    MarkovModel(std::size_t n_states, std::vector<double> transition,
                std::vector<double> initial);

    std::size_t n_states() const noexcept { return n_; }
    double p(std::size_t from, std::size_t to) const { return p_[from * n_ + to]; }
    std::span<const double> transition() const noexcept { return p_; }
    std::span<const double> initial() const noexcept { return v0_; }

    /// (P z)_i = sum_j P_ij z_j.
    std::vector<double> apply(std::span<const double> z) const;

  private:
    std::size_t n_;
    std::vector<double> p_;   // row-major
    std::vector<double> v0_;
};

using StatePath = std::vector<std::size_t>;

/// Log-likelihood ratio sum_i log(P[x_i, x_{i+1}] / P0[x_i, x_{i+1}]).
/// Both models must have the same state count and initial distribution.
/// A transition with P0 = 0 but P > 0 violates absolute continuity and throws
/// std::runtime_error; a transition with P = 0 (P0 either 0 or positive)
/// yields the -infinity sentinel: the path is impossible under P.
double markov_log_ratio(const StatePath& path, const MarkovModel& p, const MarkovModel& p0);

struct AbsContinuityWitness {
    std::size_t power = 0;  // first m with a support violation
    std::size_t from = 0;
    std::size_t to = 0;
};

struct AbsContinuityReport {
    bool pass = true;
    std::optional<AbsContinuityWitness> witness;
    std::size_t powers_checked = 0;
};

/// Checks support(P^m) subset-of support(P0^m) for m = 1, 2, ... The support
/// sequence of a fixed boolean matrix is eventually periodic, so the scan
/// stops as soon as the pair of supports repeats, and in any case at m = 2N.
AbsContinuityReport abs_continuity_check(const MarkovModel& p, const MarkovModel& p0);

/// Compensated test-function residuals
/// M_n = z[x_n] - z[x_0] - sum_{m=1}^{n} ((Pz)[x_{m-1}] - z[x_{m-1}]).
/// For the chain's own P, every M_n has exactly zero one-step conditional
/// drift. Returns (M_0, ..., M_n).
std::vector<double> markov_martingale_residual(const StatePath& path, const MarkovModel& model,
                                               std::span<const double> z);

struct MarkovFit {
    MarkovModel model;
    /// Rows with no observed outgoing transition (filled with the uniform row).
    std::vector<bool> undetermined_rows;
};

/// Empirical transition MLE over the given paths; the initial distribution is
/// the empirical law of the starting states.
MarkovFit fit_markov(const std::vector<StatePath>& paths, std::size_t n_states);

StatePath simulate_markov(const MarkovModel& model, std::size_t n_steps, RandomStream stream);

}  // namespace pointproc
