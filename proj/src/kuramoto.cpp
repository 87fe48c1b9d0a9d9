#include "bondsim/kuramoto.hpp"

#include <cmath>
#include <string>

namespace bondsim {

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " has length " + std::to_string(got) + ", expected " + std::to_string(want));
    }
}

}  // namespace

void kmbf_rhs(std::span<const double> y, std::span<double> dy, const ModelParams& params,
              const TargetMatrix& target) {
    const std::size_t n = y.size() / 2;
    require_size(target.size(), n, "target");
    const auto theta = y.first(n);
    const auto omega = y.subspan(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        dy[i] = omega[i];
        double align = 0.0;
        double bond = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dth = theta[j] - theta[i];
            align += (params.kappa0 * std::cos(dth) + params.kappa1) * (omega[j] - omega[i]);
            bond += (std::abs(dth) - target(i, j)) * sgn(dth);
        }
        dy[n + i] = inv_n * align + params.kappa2 * inv_n * bond;
    }
}

KuramotoDeriv kmbf_rhs(const KuramotoState& state, const ModelParams& params, const TargetMatrix& target) {
    const std::size_t n = state.size();
    require_size(state.omega.size(), n, "omega");
    std::vector<double> y(state.theta);
    y.insert(y.end(), state.omega.begin(), state.omega.end());
    std::vector<double> dy(2 * n);
    kmbf_rhs(y, dy, params, target);
    return {std::vector<double>(dy.begin(), dy.begin() + n), std::vector<double>(dy.begin() + n, dy.end())};
}

void km1_rhs(std::span<const double> theta, std::span<double> dtheta, const Km1Params& p) {
    const std::size_t n = theta.size();
    if (!p.nu.empty()) require_size(p.nu.size(), n, "nu");
    const double scale = p.kappa0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) s += std::sin(theta[j] - theta[i]);
        }
        dtheta[i] = (p.nu.empty() ? 0.0 : p.nu[i]) + scale * s;
    }
}

std::vector<double> km1_rhs(std::span<const double> theta, const Km1Params& p) {
    std::vector<double> out(theta.size());
    km1_rhs(theta, out, p);
    return out;
}

std::vector<double> constrained_initial_frequencies(std::span<const double> theta0, const Km1Params& p) {
    return km1_rhs(theta0, p);
}

CircleLog circle_log(double theta_i, double theta_j) {
    const double d = theta_j - theta_i;
    if (!(std::abs(d) < kPi)) {
        throw Error(ErrorKind::OutsideInjectivityRadius, "|theta_j - theta_i| = " + std::to_string(std::abs(d)) + " >= pi");
    }
    return {std::abs(d), sgn(d)};
}

}  // namespace bondsim
