#include <cmath>

#include "bondsim/diagnostics.hpp"
#include "bondsim/filippov2.hpp"
#include "bondsim/integrator.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bondsim;

namespace {

/// RK4 on one branch of the relative-coordinate equation.
double rk4_branch_error(const F2Params& p, const Segment& seg, double t_stop, double dt) {
    std::vector<double> y{seg.x0, seg.v0};
    const int b = seg.branch;
    auto rhs = [&](std::span<const double> in, std::span<double> out) {
        out[0] = in[1];
        out[1] = -p.gamma2 * in[1] - p.kappa2 * in[0] + b * p.kappa2 * p.dinf;
    };
    const auto steps = static_cast<long>(std::floor((t_stop - seg.t_start) / dt));
    Rk4Workspace ws;
    double worst = 0.0;
    for (long k = 1; k <= steps; ++k) {
        rk4_step(std::span<double>(y), dt, rhs, ws);
        const double t = seg.t_start + k * dt;
        worst = std::max(worst, std::abs(y[0] - seg.x(t)));
        worst = std::max(worst, std::abs(y[1] - seg.v(t)));
    }
    return worst;
}

/// Decay rate of | |x| - dinf | measured on the extremes of the final segment.
double tail_rate(const FilippovResult& r) {
    const Segment& last = r.segments.back();
    std::vector<double> t, y;
    if (r.regime.regime == Regime::Underdamped) {
        for (const double tau : last.solution.critical_points(40.0, 400)) {
            t.push_back(last.t_start + tau);
            y.push_back(std::abs(std::abs(last.x(t.back())) - r.params.dinf));
        }
    } else {
        for (int k = 0; k <= 200; ++k) {
            t.push_back(last.t_start + 5.0 + 0.05 * k);
            y.push_back(std::abs(std::abs(last.x(t.back())) - r.params.dinf));
        }
    }
    return fit_decay(t, y, std::pair{t.front(), t.back()}).rate;
}

}  // namespace

TEST_CASE("classify") {
    auto rc = classify({3.0, 2.0, 1.0});
    CHECK(rc.regime == Regime::Overdamped);
    CHECK(rc.discriminant == 1.0);
    CHECK(rc.k == 1.0);
    rc = classify({2.0, 1.0, 1.0});
    CHECK(rc.regime == Regime::Critical);
    CHECK(rc.discriminant == 0.0);
    rc = classify({1.0, 10.0, 1.0});
    CHECK(rc.regime == Regime::Underdamped);
    CHECK(rc.omega == doctest::Approx(std::sqrt(9.75)).epsilon(1e-15));
}

TEST_CASE("segment_solution closed forms") {
    const F2Params over{3.0, 2.0, 1.0};
    auto eq = segment_solution(over, 1, 1.0, 0.0);
    CHECK(eq.x(0.7) == 1.0);
    CHECK(eq.v(0.7) == 0.0);

    auto s = segment_solution(over, 1, 2.0, 0.0);
    CHECK(s.x(1.0) == doctest::Approx(1.0 + 2.0 * std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-15));
    CHECK(s.x(1.0) == doctest::Approx(1.600424).epsilon(1e-6));

    const F2Params under{1.0, 10.0, 1.0};
    s = segment_solution(under, -1, 0.0, -3.0);
    const double w = std::sqrt(9.75);
    CHECK(s.c2() == doctest::Approx(-0.8006).epsilon(1e-4));
    for (double t : {0.1, 0.5, 2.0}) {
        const double expect = -1.0 + std::exp(-0.5 * t) * (std::cos(w * t) + s.c2() * std::sin(w * t));
        CHECK(s.x(t) == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK(s.x(0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(s.v(0.0) == doctest::Approx(-3.0).epsilon(1e-15));

    const F2Params crit{2.0, 1.0, 1.0};
    s = segment_solution(crit, 1, 3.0, -1.0);
    // y = (2 + (1) t) e^{-t}
    CHECK(s.x(1.5) == doctest::Approx(1.0 + 3.5 * std::exp(-1.5)).epsilon(1e-15));
}

TEST_CASE("next_event") {
    const F2Params over{3.0, 2.0, 1.0};
    Segment eq{0.0, INFINITY, 1, 1.0, 0.0, segment_solution(over, 1, 1.0, 0.0)};
    CHECK(next_event(over, eq).kind == EventKind::None);

    Segment above{0.0, INFINITY, 1, 2.5, 0.0, segment_solution(over, 1, 2.5, 0.0)};
    CHECK(next_event(over, above).kind == EventKind::None);

    const F2Params under{1.0, 10.0, 1.0};
    Segment settle{0.0, INFINITY, -1, 0.0, -3.0, segment_solution(under, -1, 0.0, -3.0)};
    CHECK(settle.solution.envelope(0.0) == doctest::Approx(1.2810).epsilon(1e-4));
    CHECK(next_event(under, settle).kind == EventKind::None);

    Segment toward{0.0, INFINITY, 1, 0.5, -4.0, segment_solution(over, 1, 0.5, -4.0)};
    const Event ev = next_event(over, toward);
    REQUIRE(ev.kind == EventKind::Crossing);
    CHECK(std::abs(toward.x(ev.time)) < 1e-12);
    CHECK(ev.velocity < 0.0);
}

TEST_CASE("solve_filippov verdicts") {
    auto r = solve_filippov({3.0, 2.0, 1.0}, 0.0, 0.0, 10.0);
    CHECK(r.verdict == Verdict::OriginHit);
    CHECK(r.hit_time == 0.0);

    r = solve_filippov({3.0, 2.0, 1.0}, 2.0, 0.0, 10.0);
    CHECK(r.verdict == Verdict::Converged);
    CHECK(r.collision_times.empty());
    CHECK(r.limit == 1.0);

    // collision time fixed by a dense RK4 event oracle at dt = 1e-5
    r = solve_filippov({0.2, 100.0, 1.0}, 0.1, -5.0, 20.0);
    CHECK(r.verdict == Verdict::Converged);
    REQUIRE(r.collision_times.size() == 1);
    CHECK(r.collision_times[0] == doctest::Approx(0.026809543493432036).epsilon(1e-12));
    CHECK(r.collision_velocities[0] == doctest::Approx(-2.417607179093767).epsilon(1e-10));
    CHECK(r.limit == -1.0);

    r = solve_filippov({0.0, 4.0, 1.0}, 1.5, 0.0, 50.0);
    CHECK(r.verdict == Verdict::Converged);  // undamped amplitude 0.5 < dinf never reaches 0

    r = solve_filippov({0.01, 4.0, 1.0}, 3.0, 0.0, 1.0);
    CHECK(r.verdict == Verdict::Horizon);
}

TEST_CASE("origin hit after a finite time") {
    const F2Params p{3.0, 2.0, 1.0};
    const double T = 0.5;
    const auto back = segment_solution(p, 1, 0.0, 0.0);
    const double x0 = back.x(-T);
    const double v0 = back.v(-T);
    REQUIRE(x0 > 0.0);
    const auto r = solve_filippov(p, x0, v0, 10.0);
    CHECK(r.verdict == Verdict::OriginHit);
    CHECK(r.hit_time == doctest::Approx(T).epsilon(1e-6));
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(solve_filippov({1.0, 0.0, 1.0}, 1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(solve_filippov({1.0, 1.0, -1.0}, 1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(solve_filippov({-1.0, 1.0, 1.0}, 1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(solve_filippov({1.0, 1.0, 1.0}, 1.0, 0.0, 0.0), Error);
}

TEST_CASE("decay_envelope") {
    CHECK(decay_envelope({3.0, 2.0, 1.0}) == 1.0);
    CHECK(decay_envelope({2.0, 1.0, 1.0}) == 1.0);
    CHECK(decay_envelope({1.0, 10.0, 1.0}) == 0.5);
}

TEST_CASE("segments join continuously and energy decreases") {
    auto g = testing::rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const F2Params p{testing::uniform(g, 0.05, 4.0), testing::uniform(g, 0.5, 50.0), testing::uniform(g, 0.2, 2.0)};
        const double x0 = testing::uniform(g, -3.0, 3.0);
        const double v0 = testing::uniform(g, -20.0, 20.0);
        const auto r = solve_filippov(p, x0, v0, 30.0);
        REQUIRE(r.verdict != Verdict::OriginHit);
        for (std::size_t k = 0; k + 1 < r.segments.size(); ++k) {
            const Segment& a = r.segments[k];
            const Segment& b = r.segments[k + 1];
            CHECK(a.t_end == b.t_start);
            CHECK(std::abs(a.x(a.t_end)) < 1e-12);
            CHECK(std::abs(a.v(a.t_end) - b.v0) < 1e-12 * std::max(1.0, std::abs(b.v0)));
            CHECK(b.t_start - a.t_start > 0.0);
        }
        const auto samples = sample_filippov(r, 1000);
        for (std::size_t k = 1; k < samples.size(); ++k) {
            CHECK(samples[k].energy <= samples[k - 1].energy + 1e-12 * std::max(1.0, samples[0].energy));
        }
    }
}

TEST_CASE("closed form matches dense RK4 on every segment") {
    const F2Params p{0.2, 100.0, 1.0};
    const auto r = solve_filippov(p, 0.1, -5.0, 20.0);
    for (const auto& seg : r.segments) {
        const double stop = std::min(seg.t_end, 3.0);
        CHECK(rk4_branch_error(p, seg, stop, 1e-5) <= 1e-8);
    }
}

TEST_CASE("tail decays at the predicted exponent") {
    for (const F2Params p : {F2Params{3.0, 2.0, 1.0}, F2Params{0.5, 10.0, 1.0}, F2Params{4.5, 5.0, 2.0}}) {
        const auto r = solve_filippov(p, 1.7, -2.0, 100.0);
        REQUIRE(r.verdict == Verdict::Converged);
        CHECK(tail_rate(r) == doctest::Approx(decay_envelope(p)).epsilon(0.1));
    }
}
