#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bondsim/core.hpp"

namespace bondsim {

struct Km1Params {
    double kappa0 = 0.0;
    std::vector<double> nu;  // empty means all zero
};

struct KuramotoDeriv {
    std::vector<double> dtheta;
    std::vector<double> domega;
};

/// Second-order model with bonding. sgn(0) is taken as 0.
KuramotoDeriv kmbf_rhs(const KuramotoState& state, const ModelParams& params, const TargetMatrix& target);

/// Flat-buffer variant used by the integrator: y = (theta, omega), dy same layout.
void kmbf_rhs(std::span<const double> y, std::span<double> dy, const ModelParams& params,
              const TargetMatrix& target);

/// First-order model: nu_i + (kappa0/N) sum_j sin(theta_j - theta_i).
std::vector<double> km1_rhs(std::span<const double> theta, const Km1Params& p);

void km1_rhs(std::span<const double> theta, std::span<double> dtheta, const Km1Params& p);

/// Frequencies that make the second-order model (kappa1 = kappa2 = 0) reproduce
/// the first-order one.
std::vector<double> constrained_initial_frequencies(std::span<const double> theta0, const Km1Params& p);

struct CircleLog {
    double distance;
    int sign;
};

/// Log map on the unit circle within the injectivity radius pi.
CircleLog circle_log(double theta_i, double theta_j);

}  // namespace bondsim
