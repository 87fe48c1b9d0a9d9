#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "bondsim/core.hpp"

namespace bondsim {

/// Relative coordinate x = x1 - x2 of two bonded particles on a line with
/// psi = 1 and zero total momentum:
///   x'' = -gamma2 x' - kappa2 (|x| - dinf) sgn(x).
struct F2Params {
    double gamma2 = 0.0;  // kappa0 + kappa1
    double kappa2 = 1.0;
    double dinf = 1.0;

    static F2Params from_model(const ModelParams& m, double dinf) { return {m.kappa0 + m.kappa1, m.kappa2, dinf}; }
};

enum class Regime { Overdamped, Critical, Underdamped };

std::string_view regime_name(Regime r) noexcept;

struct RegimeClass {
    Regime regime = Regime::Overdamped;
    double discriminant = 0.0;  // gamma2^2 - 4 kappa2
    double k = 0.0;             // sqrt(disc), overdamped only
    double omega = 0.0;         // sqrt(-disc)/2, underdamped only
};

RegimeClass classify(const F2Params& p);

/// Closed-form solution on one branch, in local time tau from the entry
/// point. The deviation y = x - branch*dinf solves y'' + gamma2 y' + kappa2 y = 0:
///   overdamped   y = c1 e^{l1 tau} + c2 e^{l2 tau}
///   critical     y = (c1 + c2 tau) e^{l1 tau}
///   underdamped  y = e^{-gamma2 tau / 2} (c1 cos(omega tau) + c2 sin(omega tau))
class SegmentSolution {
public:
    SegmentSolution() = default;
    SegmentSolution(const F2Params& p, int branch, double x0, double v0);

    double x(double tau) const;
    double v(double tau) const;

    int branch() const noexcept { return branch_; }
    const RegimeClass& regime() const noexcept { return rc_; }
    double c1() const noexcept { return c1_; }
    double c2() const noexcept { return c2_; }
    double lambda1() const noexcept { return l1_; }
    double lambda2() const noexcept { return l2_; }

    /// Smallest positive local time after `after` where x' = 0.
    std::optional<double> next_critical(double after) const;

    /// Positive local times where x' = 0, ascending, up to tau_max, at most
    /// `limit` of them.
    std::vector<double> critical_points(double tau_max, std::size_t limit) const;

    /// Bound on |x - branch*dinf| valid for all tau >= tau0.
    double envelope(double tau0) const;

private:
    double y(double tau) const;
    double ydot(double tau) const;

    F2Params p_;
    RegimeClass rc_;
    int branch_ = 1;
    double c1_ = 0.0, c2_ = 0.0;
    double l1_ = 0.0, l2_ = 0.0;
};

SegmentSolution segment_solution(const F2Params& p, int branch, double x0, double v0);

struct Segment {
    double t_start = 0.0;
    double t_end = std::numeric_limits<double>::infinity();
    int branch = 1;
    double x0 = 0.0;
    double v0 = 0.0;
    SegmentSolution solution;

    double x(double t) const { return solution.x(t - t_start); }
    double v(double t) const { return solution.v(t - t_start); }
};

enum class EventKind { Crossing, OriginHit, None, BeyondHorizon };

struct Event {
    EventKind kind = EventKind::None;
    double time = 0.0;      // absolute
    double velocity = 0.0;  // at a crossing
};

/// First zero of x strictly after seg.t_start, searched up to t_horizon.
Event next_event(const F2Params& p, const Segment& seg,
                 double t_horizon = std::numeric_limits<double>::infinity());

enum class Verdict { Converged, OriginHit, Horizon };

std::string_view verdict_name(Verdict v) noexcept;

struct FilippovResult {
    F2Params params;
    RegimeClass regime;
    std::vector<Segment> segments;
    std::vector<double> collision_times;
    std::vector<double> collision_velocities;
    Verdict verdict = Verdict::Horizon;
    double limit = 0.0;     // +-dinf when converged
    double hit_time = 0.0;  // when origin-hit
    double t_max = 0.0;

    /// State at time t within the solved range (clamped to the last segment).
    double x(double t) const;
    double v(double t) const;
    /// Time up to which the solution is defined.
    double t_final() const;
};

FilippovResult solve_filippov(const F2Params& p, double x0, double v0, double t_max);

/// Asymptotic decay exponent of |x| - dinf.
double decay_envelope(const F2Params& p);

/// Two-particle total energy in the relative coordinate; non-increasing.
double filippov_energy(const F2Params& p, double x, double v);

struct FilippovSample {
    double t, x, v, energy;
};

std::vector<FilippovSample> sample_filippov(const FilippovResult& r, std::size_t count);

}  // namespace bondsim
