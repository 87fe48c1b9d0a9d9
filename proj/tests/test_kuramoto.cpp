#include <cmath>
#include <numeric>

#include "bondsim/io.hpp"
#include "bondsim/kuramoto.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bondsim;

namespace {

TargetMatrix random_target(std::mt19937_64& g, std::size_t n) {
    return target_from_phases(testing::uniform_vec(g, n, 0.0, 1.0));
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// values from an independent numpy evaluation of the same formulas
const std::vector<double> kOmega0{0.3281288574673012,   0.27314416856179613,  0.27120390665300853, 0.1176274674273285,
                                  0.07892040865542052,  0.042778989533777734, -0.04734236711201641, -0.3079851236737903,
                                  -0.357867171297064,   -0.398609136215762};
const std::vector<double> kDomega0{-2.25332976259475,   -1.9275423939801863, -1.3264750898828161, -1.1013002904813007,
                                   -0.5796903287605415, -0.0448252909861159, 0.24819198142681012, 1.7104258373137027,
                                   2.3158215576542593,  2.9587237802909385};

}  // namespace

TEST_CASE("kmbf_rhs hand examples") {
    const TargetMatrix t = target_from_phases(std::vector<double>{0.0, 1.0});
    auto d = kmbf_rhs(KuramotoState{0.0, {0.0, 0.0}, {1.0, 1.0}}, {1.0, 2.0, 3.0}, t);
    CHECK(d.dtheta == std::vector<double>{1.0, 1.0});
    CHECK(d.domega == std::vector<double>{0.0, 0.0});

    const TargetMatrix q = target_from_phases(std::vector<double>{0.0, kPi / 4});
    d = kmbf_rhs(KuramotoState{0.0, {0.0, kPi / 2}, {0.0, 0.0}}, {0.0, 0.0, 2.0}, q);
    CHECK(d.domega[0] == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(d.domega[1] == doctest::Approx(-kPi / 4).epsilon(1e-15));
}

TEST_CASE("km-5.1 initial state against a frozen oracle") {
    const Scenario s = builtin("km-5.1");
    const auto& st = std::get<KuramotoState>(s.initial);
    for (std::size_t i = 0; i < 10; ++i) CHECK(st.omega[i] == doctest::Approx(kOmega0[i]).epsilon(1e-13));
    CHECK(std::abs(sum(st.omega)) < 1e-15);

    const auto d = kmbf_rhs(st, s.params, *s.target);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(d.domega[i] - kDomega0[i]) < 1e-12);

    // straightforward double loop with circle_log for the bonding part
    const std::size_t n = st.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto [dist, sign] = circle_log(st.theta[i], st.theta[j]);
            acc += (s.params.kappa0 * std::cos(st.theta[j] - st.theta[i]) + s.params.kappa1) * (st.omega[j] - st.omega[i]);
            acc += s.params.kappa2 * (dist - (*s.target)(i, j)) * sign;
        }
        CHECK(std::abs(acc / n - d.domega[i]) < 1e-12);
    }
}

TEST_CASE("kmbf_rhs properties") {
    auto g = testing::rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 12;
        const TargetMatrix t = random_target(g, n);
        const ModelParams p{testing::uniform(g, 0, 3), testing::uniform(g, 0, 3), testing::uniform(g, 0, 20)};
        KuramotoState st{0.0, testing::uniform_vec(g, n, -1.5, 1.5), testing::uniform_vec(g, n, -2, 2)};
        const auto d = kmbf_rhs(st, p, t);

        // momentum
        CHECK(std::abs(sum(d.domega)) <= 1e-12 * n * std::max(1.0, max_abs(d.domega)));

        // Galilean shift
        const double c = testing::uniform(g, -5, 5);
        const double a = testing::uniform(g, -5, 5);
        KuramotoState shifted = st;
        for (auto& x : shifted.theta) x += c;
        for (auto& w : shifted.omega) w += a;
        const auto ds = kmbf_rhs(shifted, p, t);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ds.dtheta[i] == shifted.omega[i]);
            CHECK(std::abs(ds.domega[i] - d.domega[i]) < 1e-11);
        }

        // synchronizing part plus bonding part
        const auto sync = kmbf_rhs(st, {p.kappa0, 0.0, 0.0}, t);
        const auto bond = kmbf_rhs(st, {0.0, p.kappa1, p.kappa2}, t);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sync.domega[i] + bond.domega[i] - d.domega[i]) < 1e-12);
    }
}

TEST_CASE("bonding term agrees with circle_log on pairs") {
    auto g = testing::rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = testing::uniform(g, -1.5, 1.5);
        const double b = testing::uniform(g, -1.5, 1.5);
        const double target = testing::uniform(g, 0.1, 2.0);
        const double k2 = testing::uniform(g, 0.1, 10.0);
        const TargetMatrix t{Matrix::from_rows({{0.0, target}, {target, 0.0}})};
        const auto d = kmbf_rhs(KuramotoState{0.0, {a, b}, {0.0, 0.0}}, {0.0, 0.0, k2}, t);
        const auto [dist, sign] = circle_log(a, b);
        // N = 2 averages a single pair
        CHECK(2.0 * d.domega[0] == doctest::Approx(k2 * (dist - target) * sign).epsilon(1e-13));
    }
}

TEST_CASE("km1_rhs") {
    const std::vector<double> equal{0.3, 0.3, 0.3};
    for (double x : km1_rhs(equal, {2.0, {}})) CHECK(x == 0.0);

    const std::vector<double> quarter{0.0, kPi / 2};
    const auto d = km1_rhs(quarter, {2.0, {}});
    CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(-1.0).epsilon(1e-15));

    auto g = testing::rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto theta = testing::uniform_vec(g, 3, -4, 4);
        const auto nu = testing::uniform_vec(g, 3, -1, 1);
        CHECK(sum(km1_rhs(theta, {1.7, nu})) == doctest::Approx(sum(nu)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("constrained_initial_frequencies") {
    const std::vector<double> equal(4, 0.7);
    for (double w : constrained_initial_frequencies(equal, {1.0, {}})) CHECK(w == 0.0);

    const std::vector<double> theta{0.1979, 0.2580, 0.2601, 0.4231, 0.4635, 0.5011, 0.5947, 0.8710, 0.9262, 0.9722};
    const auto w = constrained_initial_frequencies(theta, {1.0, {}});
    CHECK(w.size() == 10);
    CHECK(std::abs(sum(w)) < 1e-15);

    const auto shifted = constrained_initial_frequencies(theta, {1.0, std::vector<double>(10, 1.0)});
    CHECK(sum(shifted) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("circle_log") {
    auto r = circle_log(0.0, kPi / 4);
    CHECK(r.distance == kPi / 4);
    CHECK(r.sign == 1);
    r = circle_log(kPi / 4, 0.0);
    CHECK(r.distance == kPi / 4);
    CHECK(r.sign == -1);
    r = circle_log(1.0, 1.0);
    CHECK(r.sign == 0);
    CHECK_THROWS_AS(circle_log(0.0, kPi), Error);
    try {
        circle_log(0.0, -4.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutsideInjectivityRadius);
    }
}
