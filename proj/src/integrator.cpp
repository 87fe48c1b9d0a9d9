#include "bondsim/integrator.hpp"

#include <cmath>
#include <string>

#include "bondsim/cucker_smale.hpp"
#include "bondsim/diagnostics.hpp"
#include "bondsim/kuramoto.hpp"

namespace bondsim {

namespace {

std::size_t step_count(const Scenario& s) { return static_cast<std::size_t>(std::llround(s.t_end / s.dt)); }

Error gap_violation(const GapInfo& g, double t, double floor) {
    Error e(ErrorKind::GapViolation, "gap between agents " + std::to_string(g.pair.first) + " and " +
                                         std::to_string(g.pair.second) + " fell to " + std::to_string(g.value) +
                                         " (floor " + std::to_string(floor) + ") at t = " + std::to_string(t));
    e.pair = g.pair;
    e.time = t;
    return e;
}

template <class State>
Trajectory<State> start(const Scenario& s) {
    Trajectory<State> traj;
    traj.model = s.model;
    traj.dt = s.dt * static_cast<double>(s.stride);
    const std::size_t samples = step_count(s) / s.stride + 1;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    traj.diagnostics.reserve(samples);
    return traj;
}

/// Shared driver: `advance` moves the flat state one step, `materialize`
/// builds the State at time t, `energy` evaluates the EnergyReport.
template <class State, class Advance, class Materialize, class Energy>
Trajectory<State> run(const Scenario& s, std::vector<double> y, Advance&& advance, Materialize&& materialize,
                      Energy&& energy) {
    auto traj = start<State>(s);
    const std::size_t steps = step_count(s);
    const bool monitor = s.gap_floor > 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * s.dt;
        try {
            if (k > 0) advance(y);
            State st = materialize(y, t);
            const GapInfo gap = min_gap(st);
            if (monitor && gap.value < s.gap_floor) throw gap_violation(gap, t, s.gap_floor);
            if (k % s.stride != 0) continue;
            const Diameters diam = diameters(st);
            traj.diagnostics.push_back({energy(st), gap.value, diam.pos_diam, diam.vel_diam});
            traj.times.push_back(t);
            traj.states.push_back(std::move(st));
        } catch (Error& e) {
            if (!e.time) e.time = t;
            traj.failure = e;
            break;
        }
    }
    return traj;
}

}  // namespace

KuramotoState rk4_step(const KuramotoState& s, double dt, const ModelParams& params, const TargetMatrix& target) {
    const std::size_t n = s.size();
    std::vector<double> y(s.theta);
    y.insert(y.end(), s.omega.begin(), s.omega.end());
    rk4_step(std::span<double>(y), dt,
             [&](std::span<const double> in, std::span<double> out) { kmbf_rhs(in, out, params, target); });
    return {s.t + dt, std::vector<double>(y.begin(), y.begin() + n), std::vector<double>(y.begin() + n, y.end())};
}

CSState rk4_step(const CSState& s, double dt, const ModelParams& params, const TargetMatrix& target,
                 const CommWeight& w) {
    const std::size_t n = s.size();
    const std::size_t d = s.dim();
    std::vector<double> y(s.x.flat().begin(), s.x.flat().end());
    y.insert(y.end(), s.v.flat().begin(), s.v.flat().end());
    rk4_step(std::span<double>(y), dt,
             [&](std::span<const double> in, std::span<double> out) { csbf_rhs(in, out, n, d, params, target, w); });
    CSState next{s.t + dt, Matrix(n, d), Matrix(n, d)};
    std::copy(y.begin(), y.begin() + n * d, next.x.flat().begin());
    std::copy(y.begin() + n * d, y.end(), next.v.flat().begin());
    return next;
}

KuramotoTrajectory simulate_kuramoto(const Scenario& s) {
    validate_scenario(s);
    const auto& init = std::get<KuramotoState>(s.initial);
    const std::size_t n = init.size();
    Rk4Workspace ws;

    if (s.model == ModelKind::KuramotoFirstOrder) {
        const Km1Params p{s.params.kappa0, s.nu};
        // energies of the induced frequencies; no bonding term without a target
        ModelParams ep = s.params;
        TargetMatrix tgt = s.target.value_or(TargetMatrix{Matrix(n, n)});
        if (!s.target) ep.kappa2 = 0.0;
        return run<KuramotoState>(
            s, init.theta,
            [&](std::vector<double>& y) {
                rk4_step(std::span<double>(y), s.dt,
                         [&](std::span<const double> in, std::span<double> out) { km1_rhs(in, out, p); }, ws);
            },
            [&](const std::vector<double>& y, double t) { return KuramotoState{t, y, km1_rhs(y, p)}; },
            [&](const KuramotoState& st) { return km_energy(st, ep, tgt); });
    }

    const TargetMatrix& target = *s.target;
    std::vector<double> y(init.theta);
    y.insert(y.end(), init.omega.begin(), init.omega.end());
    return run<KuramotoState>(
        s, std::move(y),
        [&](std::vector<double>& y) {
            rk4_step(std::span<double>(y), s.dt,
                     [&](std::span<const double> in, std::span<double> out) { kmbf_rhs(in, out, s.params, target); },
                     ws);
        },
        [&](const std::vector<double>& y, double t) {
            return KuramotoState{t, std::vector<double>(y.begin(), y.begin() + n),
                                 std::vector<double>(y.begin() + n, y.end())};
        },
        [&](const KuramotoState& st) { return km_energy(st, s.params, target); });
}

CSTrajectory simulate_cs(const Scenario& s) {
    validate_scenario(s);
    const auto& init = std::get<CSState>(s.initial);
    const std::size_t n = init.size();
    const std::size_t d = init.dim();
    const TargetMatrix& target = *s.target;
    Rk4Workspace ws;
    std::vector<double> y(init.x.flat().begin(), init.x.flat().end());
    y.insert(y.end(), init.v.flat().begin(), init.v.flat().end());
    return run<CSState>(
        s, std::move(y),
        [&](std::vector<double>& y) {
            rk4_step(std::span<double>(y), s.dt,
                     [&](std::span<const double> in, std::span<double> out) {
                         csbf_rhs(in, out, n, d, s.params, target, s.weight);
                     },
                     ws);
        },
        [&](const std::vector<double>& y, double t) {
            CSState st{t, Matrix(n, d), Matrix(n, d)};
            std::copy(y.begin(), y.begin() + n * d, st.x.flat().begin());
            std::copy(y.begin() + n * d, y.end(), st.v.flat().begin());
            const GapInfo g = min_gap(st);
            if (g.value == 0.0) throw collision_error(g.pair.first, g.pair.second);
            return st;
        },
        [&](const CSState& st) { return cs_energy(st, s.params, target, s.weight); });
}

AnyTrajectory simulate(const Scenario& s) {
    if (s.model == ModelKind::CsBond) return simulate_cs(s);
    return simulate_kuramoto(s);
}

}  // namespace bondsim
