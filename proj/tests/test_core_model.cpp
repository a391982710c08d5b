#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pointproc/compensator_path.hpp"
#include "pointproc/event_sequence.hpp"
#include "pointproc/intensity_model.hpp"
#include "pointproc/random_stream.hpp"

using namespace pointproc;

TEST_CASE("event sequence validation") {
    CHECK_NOTHROW(EventSequence(10.0, {0.5, 1.0, 9.999}));
    CHECK_THROWS_AS(EventSequence(0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(EventSequence(10.0, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EventSequence(10.0, {2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EventSequence(10.0, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EventSequence(10.0, {1.0, 10.5}), std::invalid_argument);
}

TEST_CASE("event counts are left/right consistent") {
    const EventSequence events(10.0, {1.0, 2.5, 7.0});
    CHECK(events.count_at(0.0) == 0);
    CHECK(events.count_at(1.0) == 1);
    CHECK(events.count_before(1.0) == 0);
    CHECK(events.count_at(2.5) == 2);
    CHECK(events.count_before(2.5) == 1);
    CHECK(events.count_at(10.0) == 3);
}

TEST_CASE("intensity examples") {
    const DeterministicBaseline mu{0.3, 0.2, 0.1};
    const IntensityModel hawkes = HawkesConst{mu, 0.2};
    const EventSequence empty = EventSequence::empty(10.0);

    // mu(0) = 0.3 + 0.2 = 0.5 with no history.
    CHECK(intensity_at(hawkes, empty, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

    const IntensityModel constant = ConstantRate{2.0};
    const EventSequence some(10.0, {1.0, 4.0});
    CHECK(intensity_at(constant, some, 0.3) == 2.0);
    CHECK(intensity_at(constant, some, 9.0) == 2.0);

    // The self-excited jump is visible only from the right of the event.
    const EventSequence one(10.0, {1.0});
    const double left = intensity_at(hawkes, one, 1.0);
    const double right = intensity_right(hawkes, one, 1.0);
    CHECK(right - left == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(left == doctest::Approx(mu(1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(intensity_at(hawkes, one, -0.1), std::domain_error);
    CHECK_THROWS_AS(intensity_at(hawkes, one, 10.5), std::domain_error);
}

TEST_CASE("intensity ignores events at or after t (predictability)") {
    RandomStream stream(777, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const double t = 1.0 + 8.0 * stream.next_uniform();
        std::vector<double> before, all;
        double pos = 0.0;
        for (;;) {
            pos += stream.next_exponential(1.0);
            if (pos >= 10.0) break;
            all.push_back(pos);
            if (pos < t) before.push_back(pos);
        }
        const EventSequence full(10.0, all);
        const EventSequence head(10.0, before);
        const std::vector<IntensityModel> models = {
            ConstantRate{1.5},
            DeterministicBaseline{0.4, 0.3, 0.2},
            HawkesConst{{0.3, 0.2, 0.1}, 0.2},
            HawkesExp{{0.3, 0.2, 0.1}, 0.5, 1.5},
            OneShot{2.0},
        };
        for (const auto& model : models) {
            CHECK(intensity_at(model, full, t) == intensity_at(model, head, t));
        }
    }
}

TEST_CASE("intensity is non-negative for random parameters and histories") {
    RandomStream stream(4242, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const DeterministicBaseline mu{2.0 * stream.next_uniform(), 2.0 * stream.next_uniform(),
                                       stream.next_uniform()};
        const std::vector<IntensityModel> models = {
            ConstantRate{3.0 * stream.next_uniform()},
            mu,
            HawkesConst{mu, stream.next_uniform()},
            HawkesExp{mu, stream.next_uniform(), 0.1 + 2.0 * stream.next_uniform()},
        };
        std::vector<double> times;
        double pos = 0.0;
        for (;;) {
            pos += stream.next_exponential(2.0);
            if (pos >= 5.0) break;
            times.push_back(pos);
        }
        const EventSequence events(5.0, times);
        const double t = 5.0 * stream.next_uniform();
        for (const auto& model : models) {
            CHECK(intensity_at(model, events, t) >= 0.0);
        }
    }
}

TEST_CASE("one-shot intensity switches off after the event") {
    const IntensityModel model = OneShot{2.0};
    const EventSequence events(10.0, {3.0});
    CHECK(intensity_at(model, events, 1.0) == 2.0);
    CHECK(intensity_at(model, events, 3.0) == 2.0);  // left limit
    CHECK(intensity_right(model, events, 3.0) == 0.0);
    CHECK(intensity_at(model, events, 5.0) == 0.0);
}

TEST_CASE("compensator path evaluation") {
    // A_t = t on [0, 2].
    const CompensatorPath identity({0.0, 2.0}, {0.0, 2.0}, {SegmentKind::linear});
    CHECK(compensator_eval(identity, 0.7) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(compensator_eval(identity, 0.0) == 0.0);
    CHECK(compensator_eval(identity, 2.0) == 2.0);

    // A_t = 2t on [0, 4].
    const CompensatorPath doubled({0.0, 4.0}, {0.0, 8.0}, {SegmentKind::linear});
    CHECK(compensator_eval(doubled, 3.0) == doctest::Approx(6.0).epsilon(1e-15));

    // Flat extension beyond x = 1.
    const CompensatorPath flat({0.0, 1.0, 5.0}, {0.0, 1.0, 1.0},
                               {SegmentKind::linear, SegmentKind::constant});
    CHECK(compensator_eval(flat, 3.0) == 1.0);
    CHECK(compensator_eval(flat, 5.0) == 1.0);

    CHECK_THROWS_AS(compensator_eval(flat, 5.1), std::domain_error);
    CHECK_THROWS_AS(compensator_eval(flat, -0.1), std::domain_error);
}

TEST_CASE("compensator path jumps are cadlag") {
    // Jump of height 1 at t = 1 encoded as a repeated breakpoint.
    const CompensatorPath path({0.0, 1.0, 1.0, 2.0}, {0.0, 0.5, 1.5, 2.0},
                               {SegmentKind::linear, SegmentKind::constant, SegmentKind::linear});
    CHECK(compensator_eval(path, 1.0) == 1.5);
    CHECK(compensator_eval(path, 1.0 - 1e-9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(compensator_eval(path, 1.5) == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("compensator path evaluation is monotone") {
    const CompensatorPath path({0.0, 1.0, 1.0, 2.0, 3.0}, {0.0, 0.5, 1.0, 1.0, 2.5},
                               {SegmentKind::linear, SegmentKind::constant,
                                SegmentKind::constant, SegmentKind::linear});
    RandomStream stream(99, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const double t1 = 3.0 * stream.next_uniform();
        const double t2 = 3.0 * stream.next_uniform();
        const double lo = std::min(t1, t2);
        const double hi = std::max(t1, t2);
        CHECK(compensator_eval(path, lo) <= compensator_eval(path, hi));
    }
}

TEST_CASE("compensator path validation") {
    CHECK_THROWS_AS(CompensatorPath({0.0, 1.0}, {0.0, -1.0}, {SegmentKind::linear}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CompensatorPath({0.5, 1.0}, {0.0, 1.0}, {SegmentKind::linear}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CompensatorPath({0.0, 1.0}, {0.1, 1.0}, {SegmentKind::linear}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CompensatorPath({0.0, 1.0}, {0.0, 1.0}, {SegmentKind::constant}),
                    std::invalid_argument);
}

// Philox4x32-10 known-answer vectors from the reference distribution of the
// counter-based generator family.
TEST_CASE("philox known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(RandomStream::philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(RandomStream::philox4x32(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                   A2{0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(RandomStream::philox4x32(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                   A2{0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("random streams reproduce and separate") {
    RandomStream a(123, 5);
    RandomStream b(123, 5);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }

    RandomStream c(123, 6);
    RandomStream d(124, 5);
    RandomStream reference(123, 5);
    bool all_same_c = true;
    bool all_same_d = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t r = reference.next_u64();
        all_same_c = all_same_c && (c.next_u64() == r);
        all_same_d = all_same_d && (d.next_u64() == r);
    }
    CHECK_FALSE(all_same_c);
    CHECK_FALSE(all_same_d);
}

TEST_CASE("uniform draws live in (0,1) and exponentials are positive") {
    RandomStream stream(2024, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = stream.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        CHECK(stream.next_exponential(2.0) > 0.0);
        CHECK(std::isfinite(stream.next_normal()));
    }
}
