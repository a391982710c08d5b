#pragma once

#include <array>
#include <cstdint>

namespace pointproc {

/// Counter-based random number stream (Philox4x32-10).
///
/// A stream is fully determined by a 64-bit root seed (the Philox key) and a
/// 64-bit stream index (the high half of the counter). Equal (seed, index)
/// pairs reproduce the same draw sequence on every platform; distinct indices
/// give statistically independent streams, so ensembles can hand stream i to
/// path i and simulate paths in any order or thread layout.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

    std::uint64_t next_u64();

    /// Uniform draw in the open interval (0, 1).
    double next_uniform();

    /// Exponential waiting time with the given rate (inverse CDF).
    double next_exponential(double rate);

    /// Standard normal draw (Box-Muller, two uniforms per call).
    double next_normal();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    /// Raw Philox4x32-10 block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox4x32(
        const std::array<std::uint32_t, 4>& counter,
        const std::array<std::uint32_t, 2>& key) noexcept;

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;      // draw counter, low half of the Philox counter
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace pointproc
