#include "pointproc/compensator_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pointproc {

CompensatorPath::CompensatorPath(std::vector<double> breakpoints, std::vector<double> values,
                                 std::vector<SegmentKind> kinds)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), kinds_(std::move(kinds)) {
    if (breakpoints_.size() < 1 || breakpoints_.size() != values_.size() ||
        kinds_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("CompensatorPath: inconsistent array sizes");
    }
    if (breakpoints_.front() != 0.0) {
        throw std::invalid_argument("CompensatorPath: first breakpoint must be 0");
    }
    if (values_.front() != 0.0) {
        throw std::invalid_argument("CompensatorPath: value at 0 must be 0");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] <= breakpoints_[i + 1])) {
            throw std::invalid_argument("CompensatorPath: breakpoints must be sorted");
        }
        if (!(values_[i] <= values_[i + 1])) {
            throw std::invalid_argument("CompensatorPath: values must be non-decreasing");
        }
        const bool zero_width = breakpoints_[i] == breakpoints_[i + 1];
        if (!zero_width && kinds_[i] == SegmentKind::constant &&
            values_[i] != values_[i + 1]) {
            throw std::invalid_argument(
                "CompensatorPath: constant segment with differing endpoint values");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("CompensatorPath: non-finite value");
        }
    }
}

double CompensatorPath::value_at(double t) const {
    if (!(t >= 0.0) || t > breakpoints_.back()) {
        throw std::domain_error("CompensatorPath: t outside [0, last breakpoint]");
    }
    // First breakpoint strictly beyond t; duplicates of t (jump risers) all lie
    // to the left, so index i-1 is the post-jump occurrence.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    if (i == breakpoints_.size()) {
        return values_.back();
    }
    const std::size_t lo = i - 1;
    if (breakpoints_[lo] == t || kinds_[lo] == SegmentKind::constant) {
        return values_[lo];
    }
    const double width = breakpoints_[i] - breakpoints_[lo];
    const double frac = (t - breakpoints_[lo]) / width;
    return values_[lo] + (values_[i] - values_[lo]) * frac;
}

double compensator_eval(const CompensatorPath& path, double t) {
    return path.value_at(t);
}

CompensatorPath::Builder::Builder() {
    breakpoints_.push_back(0.0);
    values_.push_back(0.0);
}

void CompensatorPath::Builder::linear_to(double t, double value) {
    if (t < breakpoints_.back() || value < values_.back()) {
        throw std::invalid_argument("CompensatorPath::Builder: non-monotone extension");
    }
    if (t == breakpoints_.back()) {
        if (value != values_.back()) {
            jump(value - values_.back());
        }
        return;
    }
    breakpoints_.push_back(t);
    values_.push_back(value);
    kinds_.push_back(SegmentKind::linear);
}

void CompensatorPath::Builder::constant_to(double t) {
    if (t < breakpoints_.back()) {
        throw std::invalid_argument("CompensatorPath::Builder: non-monotone extension");
    }
    if (t == breakpoints_.back()) {
        return;
    }
    breakpoints_.push_back(t);
    values_.push_back(values_.back());
    kinds_.push_back(SegmentKind::constant);
}

void CompensatorPath::Builder::jump(double amount) {
    if (!(amount >= 0.0)) {
        throw std::invalid_argument("CompensatorPath::Builder: negative jump");
    }
    if (amount == 0.0) {
        return;
    }
    breakpoints_.push_back(breakpoints_.back());
    values_.push_back(values_.back() + amount);
    kinds_.push_back(SegmentKind::constant);
}

CompensatorPath CompensatorPath::Builder::finish() {
    return CompensatorPath(std::move(breakpoints_), std::move(values_), std::move(kinds_));
}

}  // namespace pointproc
