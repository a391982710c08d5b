#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pointproc {

enum class SegmentKind : unsigned char { linear, constant };

/// Piecewise non-decreasing path A_t starting at A_0 = 0.
///
/// Breakpoints are sorted and may repeat: a repeated breakpoint encodes a jump
/// (the value rises across a zero-width segment), and evaluation at the jump
/// time returns the post-jump value (cadlag convention). Positive-width
/// segments interpolate linearly or stay flat.
class CompensatorPath {
  public:
    CompensatorPath(std::vector<double> breakpoints, std::vector<double> values,
                    std::vector<SegmentKind> kinds);

    double value_at(double t) const;
    double last_time() const noexcept { return breakpoints_.back(); }

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const SegmentKind> kinds() const noexcept { return kinds_; }

    /// Incremental construction helper used by the compensator builders.
    class Builder {
      public:
        Builder();
        /// Extend with a linear rise to (t, value). `value` must not decrease.
        void linear_to(double t, double value);
        /// Extend flat to time t.
        void constant_to(double t);
        /// Jump at the current end time by `amount` >= 0.
        void jump(double amount);
        double current_time() const noexcept { return breakpoints_.back(); }
        double current_value() const noexcept { return values_.back(); }
        CompensatorPath finish();

      private:
        std::vector<double> breakpoints_;
        std::vector<double> values_;
        std::vector<SegmentKind> kinds_;
    };

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<SegmentKind> kinds_;
};

/// Evaluates the path at t. Throws std::domain_error for t < 0 or beyond the
/// last breakpoint. Monotone in t.
double compensator_eval(const CompensatorPath& path, double t);

}  // namespace pointproc
