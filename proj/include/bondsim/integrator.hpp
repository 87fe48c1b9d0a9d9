#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bondsim/core.hpp"
#include "bondsim/energy.hpp"

namespace bondsim {

/// Scratch buffers for one RK4 step; reuse across steps to avoid allocation.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;

    void resize(std::size_t m) {
        for (auto* v : {&k1, &k2, &k3, &k4, &tmp}) v->resize(m);
    }
};

/// Classical RK4 on a flat state; rhs(y, dy) fills dy.
template <class Rhs>
void rk4_step(std::span<double> y, double dt, Rhs&& rhs, Rk4Workspace& ws) {
    const std::size_t m = y.size();
    ws.resize(m);
    rhs(std::span<const double>(y), std::span<double>(ws.k1));
    for (std::size_t i = 0; i < m; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k1[i];
    rhs(std::span<const double>(ws.tmp), std::span<double>(ws.k2));
    for (std::size_t i = 0; i < m; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k2[i];
    rhs(std::span<const double>(ws.tmp), std::span<double>(ws.k3));
    for (std::size_t i = 0; i < m; ++i) ws.tmp[i] = y[i] + dt * ws.k3[i];
    rhs(std::span<const double>(ws.tmp), std::span<double>(ws.k4));
    for (std::size_t i = 0; i < m; ++i) {
        y[i] += dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
    }
}

template <class Rhs>
void rk4_step(std::span<double> y, double dt, Rhs&& rhs) {
    Rk4Workspace ws;
    rk4_step(y, dt, std::forward<Rhs>(rhs), ws);
}

KuramotoState rk4_step(const KuramotoState& s, double dt, const ModelParams& params, const TargetMatrix& target);
CSState rk4_step(const CSState& s, double dt, const ModelParams& params, const TargetMatrix& target,
                 const CommWeight& w);

struct SampleDiagnostics {
    EnergyReport energy;
    double min_gap = 0.0;
    double pos_diam = 0.0;  // max gap
    double vel_diam = 0.0;
};

template <class State>
struct Trajectory {
    ModelKind model = ModelKind::KuramotoBond;
    double dt = 0.0;  // spacing of stored samples
    std::vector<double> times;
    std::vector<State> states;
    std::vector<SampleDiagnostics> diagnostics;
    std::optional<Error> failure;  // set when the run stopped early

    std::size_t size() const noexcept { return times.size(); }
    std::vector<EnergyReport> energies() const;
};

template <class State>
std::vector<EnergyReport> Trajectory<State>::energies() const {
    std::vector<EnergyReport> out;
    out.reserve(diagnostics.size());
    for (const auto& d : diagnostics) out.push_back(d.energy);
    return out;
}

using KuramotoTrajectory = Trajectory<KuramotoState>;
using CSTrajectory = Trajectory<CSState>;
using AnyTrajectory = std::variant<KuramotoTrajectory, CSTrajectory>;

KuramotoTrajectory simulate_kuramoto(const Scenario& s);
CSTrajectory simulate_cs(const Scenario& s);

/// Validates the scenario, then integrates from 0 to t_end. Validation errors
/// are thrown; errors during integration (gap monitor, collisions) end the run
/// and are stored in `failure`, keeping the samples taken so far.
AnyTrajectory simulate(const Scenario& s);

template <class State>
double energy_balance_residual(const Trajectory<State>& traj) {
    const auto e = traj.energies();
    return energy_balance_residual(std::span<const EnergyReport>(e), traj.dt);
}

}  // namespace bondsim
