#include "bondsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bondsim/cucker_smale.hpp"

namespace bondsim {

namespace {

constexpr double kLogFloor = 1e-15;
constexpr std::size_t kMinFitSamples = 5;

void require_pair(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::SingleAgent, "need at least two agents");
}

double row_distance(const Matrix& m, std::size_t i, std::size_t j) { return distance(m, i, j); }

}  // namespace

Diameters diameters(const KuramotoState& s) {
    require_pair(s.size());
    const auto [tlo, thi] = std::minmax_element(s.theta.begin(), s.theta.end());
    double vel = 0.0;
    if (!s.omega.empty()) {
        const auto [wlo, whi] = std::minmax_element(s.omega.begin(), s.omega.end());
        vel = *whi - *wlo;
    }
    return {*thi - *tlo, vel};
}

Diameters diameters(const CSState& s) {
    require_pair(s.size());
    Diameters d{0.0, 0.0};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            d.pos_diam = std::max(d.pos_diam, row_distance(s.x, i, j));
            d.vel_diam = std::max(d.vel_diam, row_distance(s.v, i, j));
        }
    }
    return d;
}

double target_error(const KuramotoState& s, const TargetMatrix& target) {
    require_pair(s.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double dev = std::abs(s.theta[j] - s.theta[i]) - target(i, j);
            sq += dev * dev;
        }
    }
    return std::sqrt(sq);
}

double target_error(const CSState& s, const TargetMatrix& target) {
    require_pair(s.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double dev = row_distance(s.x, i, j) - target(i, j);
            sq += dev * dev;
        }
    }
    return std::sqrt(sq);
}

GapInfo min_gap(const KuramotoState& s) {
    require_pair(s.size());
    GapInfo best{std::numeric_limits<double>::infinity(), {0, 1}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double g = std::abs(s.theta[j] - s.theta[i]);
            if (g < best.value) best = {g, {i, j}};
        }
    }
    return best;
}

GapInfo min_gap(const CSState& s) {
    require_pair(s.size());
    GapInfo best{std::numeric_limits<double>::infinity(), {0, 1}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double g = row_distance(s.x, i, j);
            if (g < best.value) best = {g, {i, j}};
        }
    }
    return best;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> y,
                   std::optional<std::pair<double, double>> window) {
    if (t.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "t and y lengths differ");
    if (t.empty()) throw Error(ErrorKind::TooFewSamples, "empty series");
    const auto [lo, hi] = window.value_or(std::pair{0.5 * (t.front() + t.back()), t.back()});
    if (!(lo < hi)) throw Error(ErrorKind::InvalidHorizon, "fit window must have t_lo < t_hi");

    std::vector<double> ts;
    std::vector<double> ls;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < lo || t[k] > hi) continue;
        if (!(y[k] > 0.0)) {
            throw Error(ErrorKind::NonpositiveSamples, "sample at t = " + std::to_string(t[k]) + " is not positive");
        }
        if (y[k] < kLogFloor) continue;
        ts.push_back(t[k]);
        ls.push_back(std::log(y[k]));
    }
    if (ts.size() < kMinFitSamples) {
        throw Error(ErrorKind::TooFewSamples, "fit window holds " + std::to_string(ts.size()) + " usable samples");
    }

    const double m = static_cast<double>(ts.size());
    double tm = 0.0;
    double lm = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        tm += ts[k];
        lm += ls[k];
    }
    tm /= m;
    lm /= m;
    double stt = 0.0;
    double stl = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - tm) * (ts[k] - tm);
        stl += (ts[k] - tm) * (ls[k] - lm);
    }
    const double slope = stl / stt;
    const double intercept = lm - slope * tm;
    double ss = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double r = ls[k] - (intercept + slope * ts[k]);
        ss += r * r;
    }
    return {-slope, intercept, lo, hi, std::sqrt(ss / m), ts.size()};
}

}  // namespace bondsim
