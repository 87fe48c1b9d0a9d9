#include "bondsim/filippov2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bondsim {

namespace {

constexpr double kOriginTol = 1e-12;
constexpr double kCriticalRelTol = 1e-12;
constexpr std::size_t kMaxBrackets = 10'000'000;
constexpr std::size_t kMaxSegments = 1'000'000;

/// Bisect f on [lo, hi] with f(lo) > 0 >= f(hi) down to adjacent doubles.
template <class F>
double bisect(F&& f, double lo, double hi) {
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) return hi;
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

void validate(const F2Params& p) {
    if (!std::isfinite(p.gamma2) || !std::isfinite(p.kappa2) || !std::isfinite(p.dinf)) {
        throw Error(ErrorKind::NonFiniteValue, "filippov2 parameters must be finite");
    }
    if (p.gamma2 < 0.0 || p.kappa2 < 0.0) throw Error(ErrorKind::NegativeCoupling, "couplings must be nonnegative");
    if (p.kappa2 == 0.0) throw Error(ErrorKind::ZeroKappa2, "filippov2 needs kappa2 > 0");
    if (!(p.dinf > 0.0)) throw Error(ErrorKind::NonpositiveTarget, "dinf must be positive");
}

}  // namespace

std::string_view regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::Overdamped: return "overdamped";
        case Regime::Critical: return "critically-damped";
        case Regime::Underdamped: return "underdamped";
    }
    return "";
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::OriginHit: return "origin-hit-ill-posed";
        case Verdict::Horizon: return "horizon";
    }
    return "";
}

RegimeClass classify(const F2Params& p) {
    RegimeClass rc;
    const double g2 = p.gamma2 * p.gamma2;
    const double k4 = 4.0 * p.kappa2;
    rc.discriminant = g2 - k4;
    if (std::abs(rc.discriminant) <= kCriticalRelTol * std::max(g2, k4)) {
        rc.regime = Regime::Critical;
    } else if (rc.discriminant > 0.0) {
        rc.regime = Regime::Overdamped;
        rc.k = std::sqrt(rc.discriminant);
    } else {
        rc.regime = Regime::Underdamped;
        rc.omega = 0.5 * std::sqrt(-rc.discriminant);
    }
    return rc;
}

SegmentSolution::SegmentSolution(const F2Params& p, int branch, double x0, double v0)
    : p_(p), rc_(classify(p)), branch_(branch) {
    const double y0 = x0 - branch * p.dinf;
    switch (rc_.regime) {
        case Regime::Overdamped:
            l1_ = 0.5 * (-p.gamma2 - rc_.k);
            l2_ = 0.5 * (-p.gamma2 + rc_.k);
            c2_ = (v0 - l1_ * y0) / (l2_ - l1_);
            c1_ = y0 - c2_;
            break;
        case Regime::Critical:
            l1_ = l2_ = -0.5 * p.gamma2;
            c1_ = y0;
            c2_ = v0 - l1_ * y0;
            break;
        case Regime::Underdamped:
            l1_ = l2_ = -0.5 * p.gamma2;
            c1_ = y0;
            c2_ = (v0 + 0.5 * p.gamma2 * y0) / rc_.omega;
            break;
    }
}

double SegmentSolution::y(double tau) const {
    switch (rc_.regime) {
        case Regime::Overdamped:
            return c1_ * std::exp(l1_ * tau) + c2_ * std::exp(l2_ * tau);
        case Regime::Critical:
            return (c1_ + c2_ * tau) * std::exp(l1_ * tau);
        case Regime::Underdamped: {
            const double w = rc_.omega * tau;
            return std::exp(l1_ * tau) * (c1_ * std::cos(w) + c2_ * std::sin(w));
        }
    }
    return 0.0;
}

double SegmentSolution::ydot(double tau) const {
    switch (rc_.regime) {
        case Regime::Overdamped:
            return c1_ * l1_ * std::exp(l1_ * tau) + c2_ * l2_ * std::exp(l2_ * tau);
        case Regime::Critical:
            return (c2_ + l1_ * (c1_ + c2_ * tau)) * std::exp(l1_ * tau);
        case Regime::Underdamped: {
            const double w = rc_.omega * tau;
            const double alpha = -l1_;
            const double pc = rc_.omega * c2_ - alpha * c1_;
            const double qs = -alpha * c2_ - rc_.omega * c1_;
            return std::exp(l1_ * tau) * (pc * std::cos(w) + qs * std::sin(w));
        }
    }
    return 0.0;
}

double SegmentSolution::x(double tau) const { return branch_ * p_.dinf + y(tau); }
double SegmentSolution::v(double tau) const { return ydot(tau); }

std::optional<double> SegmentSolution::next_critical(double after) const {
    switch (rc_.regime) {
        case Regime::Overdamped: {
            if (c1_ == 0.0 || c2_ == 0.0) return std::nullopt;
            const double ratio = -c2_ * l2_ / (c1_ * l1_);
            if (ratio <= 0.0) return std::nullopt;
            const double tau = std::log(ratio) / (l1_ - l2_);
            if (tau > after && tau > 0.0) return tau;
            return std::nullopt;
        }
        case Regime::Critical: {
            if (c2_ == 0.0 || l1_ == 0.0) return std::nullopt;
            const double tau = -(c2_ + l1_ * c1_) / (l1_ * c2_);
            if (tau > after && tau > 0.0) return tau;
            return std::nullopt;
        }
        case Regime::Underdamped: {
            const double alpha = -l1_;
            const double pc = rc_.omega * c2_ - alpha * c1_;
            const double qs = -alpha * c2_ - rc_.omega * c1_;
            if (pc == 0.0 && qs == 0.0) return std::nullopt;
            // y' is proportional to cos(omega tau - psi)
            const double psi = std::atan2(qs, pc);
            const double floor_phase = std::max(rc_.omega * std::max(after, 0.0), 1e-12);
            double m = std::floor((floor_phase - psi - 0.5 * kPi) / kPi);
            double phase = psi + 0.5 * kPi + m * kPi;
            while (phase <= floor_phase || phase / rc_.omega <= after) {
                m += 1.0;
                phase = psi + 0.5 * kPi + m * kPi;
            }
            return phase / rc_.omega;
        }
    }
    return std::nullopt;
}

std::vector<double> SegmentSolution::critical_points(double tau_max, std::size_t limit) const {
    std::vector<double> out;
    double after = 0.0;
    while (out.size() < limit) {
        const auto tau = next_critical(after);
        if (!tau || *tau > tau_max) break;
        out.push_back(*tau);
        after = *tau;
    }
    return out;
}

double SegmentSolution::envelope(double tau0) const {
    switch (rc_.regime) {
        case Regime::Overdamped:
            return std::abs(c1_) * std::exp(l1_ * tau0) + std::abs(c2_) * std::exp(l2_ * tau0);
        case Regime::Critical: {
            // sup over tau >= tau0 of (|c1| + |c2| tau) e^{l1 tau}
            double tau = tau0;
            if (c2_ != 0.0 && l1_ < 0.0) tau = std::max(tau0, -1.0 / l1_ - std::abs(c1_) / std::abs(c2_));
            return (std::abs(c1_) + std::abs(c2_) * tau) * std::exp(l1_ * tau);
        }
        case Regime::Underdamped:
            return std::hypot(c1_, c2_) * std::exp(l1_ * tau0);
    }
    return 0.0;
}

SegmentSolution segment_solution(const F2Params& p, int branch, double x0, double v0) {
    return SegmentSolution(p, branch, x0, v0);
}

Event next_event(const F2Params& p, const Segment& seg, double t_horizon) {
    const SegmentSolution& sol = seg.solution;
    const int b = seg.branch;
    auto side = [&](double tau) { return b * sol.x(tau); };
    const double span = t_horizon - seg.t_start;

    auto crossing = [&](double lo, double hi) -> Event {
        const double tau = bisect(side, lo, hi);
        const double vel = sol.v(tau);
        const double t = seg.t_start + tau;
        if (tau > span) return {EventKind::BeyondHorizon, t_horizon, 0.0};
        if (std::abs(vel) < kOriginTol) return {EventKind::OriginHit, t, 0.0};
        return {EventKind::Crossing, t, vel};
    };

    // returns true when [lo, hi] settles the search
    auto probe = [&](double lo, double hi, Event& ev) {
        if (std::abs(sol.x(hi)) < kOriginTol) {
            ev = hi > span ? Event{EventKind::BeyondHorizon, t_horizon, 0.0}
                           : Event{EventKind::OriginHit, seg.t_start + hi, 0.0};
            return true;
        }
        if (side(hi) < 0.0) {
            ev = crossing(lo, hi);
            return true;
        }
        return false;
    };

    Event ev;
    if (sol.regime().regime != Regime::Underdamped) {
        const auto crit = sol.next_critical(0.0);
        if (crit && probe(0.0, *crit, ev)) return ev;
        // x is monotone toward branch*dinf after the last critical point
        return {EventKind::None, 0.0, 0.0};
    }

    double lo = 0.0;
    for (std::size_t k = 0; k < kMaxBrackets; ++k) {
        if (sol.envelope(lo) < p.dinf) return {EventKind::None, 0.0, 0.0};
        if (lo > span) return {EventKind::BeyondHorizon, t_horizon, 0.0};
        const auto hi = sol.next_critical(lo);
        if (!hi) break;
        if (probe(lo, *hi, ev)) return ev;
        lo = *hi;
    }
    throw Error(ErrorKind::RootFindFailure, "no bracket found although the envelope admits a zero");
}

FilippovResult solve_filippov(const F2Params& p, double x0, double v0, double t_max) {
    validate(p);
    if (!std::isfinite(x0) || !std::isfinite(v0)) throw Error(ErrorKind::NonFiniteValue, "initial state must be finite");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorKind::InvalidHorizon, "t_max must be positive");

    FilippovResult r;
    r.params = p;
    r.regime = classify(p);
    r.t_max = t_max;

    if (std::abs(x0) < kOriginTol && std::abs(v0) < kOriginTol) {
        Segment seg{0.0, 0.0, 1, x0, v0, SegmentSolution(p, 1, x0, v0)};
        r.segments.push_back(seg);
        r.verdict = Verdict::OriginHit;
        r.hit_time = 0.0;
        return r;
    }

    int branch = x0 != 0.0 ? sgn(x0) : sgn(v0);
    double t = 0.0;
    double x = x0;
    double v = v0;
    for (std::size_t k = 0; k < kMaxSegments; ++k) {
        Segment seg{t, std::numeric_limits<double>::infinity(), branch, x, v, SegmentSolution(p, branch, x, v)};
        const Event ev = next_event(p, seg, t_max);
        switch (ev.kind) {
            case EventKind::Crossing:
                seg.t_end = ev.time;
                r.segments.push_back(seg);
                r.collision_times.push_back(ev.time);
                r.collision_velocities.push_back(ev.velocity);
                t = ev.time;
                x = 0.0;
                v = ev.velocity;
                branch = -branch;
                continue;
            case EventKind::OriginHit:
                seg.t_end = ev.time;
                r.segments.push_back(seg);
                r.verdict = Verdict::OriginHit;
                r.hit_time = ev.time;
                return r;
            case EventKind::None:
                r.segments.push_back(seg);
                r.verdict = Verdict::Converged;
                r.limit = branch * p.dinf;
                return r;
            case EventKind::BeyondHorizon:
                seg.t_end = t_max;
                r.segments.push_back(seg);
                r.verdict = Verdict::Horizon;
                return r;
        }
    }
    throw Error(ErrorKind::RootFindFailure, "collision count exceeded " + std::to_string(kMaxSegments));
}

double FilippovResult::t_final() const { return verdict == Verdict::OriginHit ? hit_time : t_max; }

namespace {

const Segment& locate(const std::vector<Segment>& segs, double t) {
    auto it = std::upper_bound(segs.begin(), segs.end(), t,
                               [](double value, const Segment& s) { return value < s.t_start; });
    return it == segs.begin() ? segs.front() : *(it - 1);
}

}  // namespace

double FilippovResult::x(double t) const { return locate(segments, t).x(t); }
double FilippovResult::v(double t) const { return locate(segments, t).v(t); }

double decay_envelope(const F2Params& p) {
    const RegimeClass rc = classify(p);
    if (rc.regime == Regime::Underdamped) return 0.5 * p.gamma2;
    return 0.5 * (p.gamma2 - rc.k);
}

double filippov_energy(const F2Params& p, double x, double v) {
    const double dev = std::abs(x) - p.dinf;
    return 0.25 * v * v + 0.25 * p.kappa2 * dev * dev;
}

std::vector<FilippovSample> sample_filippov(const FilippovResult& r, std::size_t count) {
    std::vector<FilippovSample> out;
    const double tf = r.t_final();
    if (count < 2 || tf == 0.0) {
        const double x = r.x(0.0);
        const double v = r.v(0.0);
        out.push_back({0.0, x, v, filippov_energy(r.params, x, v)});
        return out;
    }
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = tf * static_cast<double>(k) / static_cast<double>(count - 1);
        const double x = r.x(t);
        const double v = r.v(t);
        out.push_back({t, x, v, filippov_energy(r.params, x, v)});
    }
    return out;
}

}  // namespace bondsim
