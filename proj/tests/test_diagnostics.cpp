#include <cmath>

#include "bondsim/diagnostics.hpp"
#include "bondsim/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bondsim;

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = lo + (hi - lo) * k / (n - 1);
    return t;
}

}  // namespace

TEST_CASE("diameters") {
    auto d = diameters(KuramotoState{0.0, {0.4, 0.4, 0.4}, {1.0, 1.0, 1.0}});
    CHECK(d.pos_diam == 0.0);
    CHECK(d.vel_diam == 0.0);
    d = diameters(KuramotoState{0.0, {0.0, 1.0, 3.0}, {0.0, 2.0, 5.0}});
    CHECK(d.pos_diam == 3.0);
    CHECK(d.vel_diam == 5.0);
    d = diameters(std::get<KuramotoState>(builtin("km-5.1").initial));
    CHECK(d.pos_diam == doctest::Approx(0.7743).epsilon(1e-12));

    const CSState cs{0.0, Matrix::from_rows({{0.0, 0.0}, {3.0, 4.0}, {1.0, 1.0}}),
                     Matrix::from_rows({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}})};
    const auto c = diameters(cs);
    CHECK(c.pos_diam == 5.0);
    CHECK(c.vel_diam == 2.0);
    CHECK_THROWS_AS(diameters(KuramotoState{0.0, {1.0}, {1.0}}), Error);
}

TEST_CASE("target_error") {
    const std::vector<double> star{0.0, 0.3, 1.0};
    const TargetMatrix t = target_from_phases(star);
    CHECK(target_error(KuramotoState{0.0, star, {0, 0, 0}}, t) == 0.0);
    CHECK(target_error(KuramotoState{0.0, {2.0, 2.3, 3.0}, {0, 0, 0}}, t) == doctest::Approx(0.0).scale(1.0));

    const TargetMatrix pair{Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})};
    CHECK(target_error(KuramotoState{0.0, {0.0, 1.3}, {0, 0}}, pair) == doctest::Approx(0.3));

    // translation, rotation and consistent relabelling leave it unchanged
    auto g = testing::rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const TargetMatrix ct = target_from_points(testing::uniform_matrix(g, n, 2, -2, 2));
        CSState s{0.0, testing::uniform_matrix(g, n, 2, -2, 2), Matrix(n, 2)};
        const double base = target_error(s, ct);
        CSState moved = s;
        const double a = testing::uniform(g, 0, 6.28);
        const double dx = testing::uniform(g, -5, 5), dy = testing::uniform(g, -5, 5);
        for (std::size_t i = 0; i < n; ++i) {
            moved.x(i, 0) = std::cos(a) * s.x(i, 0) - std::sin(a) * s.x(i, 1) + dx;
            moved.x(i, 1) = std::sin(a) * s.x(i, 0) + std::cos(a) * s.x(i, 1) + dy;
        }
        CHECK(target_error(moved, ct) == doctest::Approx(base).epsilon(1e-12));

        CSState perm = s;
        TargetMatrix pt{Matrix(n, n)};
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pi = (i + 2) % n;
            perm.x(i, 0) = s.x(pi, 0);
            perm.x(i, 1) = s.x(pi, 1);
            for (std::size_t j = 0; j < n; ++j) pt.entries(i, j) = ct((i + 2) % n, (j + 2) % n);
        }
        CHECK(target_error(perm, pt) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("fit_decay") {
    const auto t = grid(0.0, 5.0, 101);
    std::vector<double> y;
    for (double x : t) y.push_back(std::exp(-2.0 * x));
    auto f = fit_decay(t, y, std::pair{0.0, 5.0});
    CHECK(std::abs(f.rate - 2.0) < 1e-10);
    CHECK(f.rms < 1e-12);

    y.clear();
    for (double x : t) y.push_back(3.0 * std::exp(-0.5 * x));
    f = fit_decay(t, y, std::pair{0.0, 5.0});
    CHECK(f.rate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    // default window is the trailing half
    f = fit_decay(t, y);
    CHECK(f.t_lo == 2.5);
    CHECK(f.t_hi == 5.0);
    CHECK(f.used == 51);

    // scaling shifts the intercept only
    std::vector<double> scaled = y;
    for (auto& v : scaled) v *= 7.0;
    const auto fs = fit_decay(t, scaled);
    CHECK(fs.rate == doctest::Approx(f.rate).epsilon(1e-12));
    CHECK(fs.intercept == doctest::Approx(f.intercept + std::log(7.0)).epsilon(1e-12));

    y[80] = 0.0;
    try {
        fit_decay(t, y);
        FAIL("expected NonpositiveSamples");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonpositiveSamples);
    }

    // values under the floor are skipped
    std::vector<double> tiny = scaled;
    tiny[90] = 1e-300;
    CHECK(fit_decay(t, tiny).used == 50);

    const std::vector<double> few_t{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> few_y{1.0, 0.5, 0.25, 0.125};
    try {
        fit_decay(few_t, few_y, std::pair{0.0, 3.0});
        FAIL("expected TooFewSamples");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooFewSamples);
    }
}
