#pragma once

#include <span>

#include "bondsim/core.hpp"

namespace bondsim {

struct EnergyReport {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
    double production = 0.0;
};

EnergyReport km_energy(const KuramotoState& state, const ModelParams& params, const TargetMatrix& target);

EnergyReport cs_energy(const CSState& state, const ModelParams& params, const TargetMatrix& target,
                       const CommWeight& w);

/// Same as cs_energy but without the production term, so coincident agents
/// are allowed.
EnergyReport cs_energy_no_production(const CSState& state, const ModelParams& params, const TargetMatrix& target);

/// Cumulative composite Simpson integral of f on a uniform grid; out[k]
/// approximates the integral over [t_0, t_k].
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// max_k |E(t_k) + int_0^{t_k} P - E(0)| on a uniform grid of spacing dt.
double energy_balance_residual(std::span<const EnergyReport> samples, double dt);

}  // namespace bondsim
