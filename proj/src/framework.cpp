#include "bondsim/framework.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bondsim/cucker_smale.hpp"
#include "bondsim/diagnostics.hpp"
#include "bondsim/energy.hpp"
#include "bondsim/kuramoto.hpp"

namespace bondsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kPsiSamples = 10000;

Condition strict(std::string name, std::string statement, double margin) {
    return {std::move(name), std::move(statement), margin > 0.0, margin};
}

Condition non_strict(std::string name, std::string statement, double margin) {
    return {std::move(name), std::move(statement), margin >= 0.0, margin};
}

void finish(FrameworkVerdict& v) {
    v.overall = std::all_of(v.conditions.begin(), v.conditions.end(), [](const Condition& c) { return c.pass; });
}

double spread(std::size_t n, double e0, double kappa2) {
    return std::sqrt(2.0 * static_cast<double>(n) * e0 / kappa2);
}

void require_kappa2(const ModelParams& params) {
    if (!(params.kappa2 > 0.0)) throw Error(ErrorKind::ZeroKappa2, "bounds need kappa2 > 0");
}

}  // namespace

const Condition* FrameworkVerdict::find(std::string_view name) const {
    for (const auto& c : conditions)
        if (c.name == name) return &c;
    if (explicit_condition && explicit_condition->name == name) return &*explicit_condition;
    return nullptr;
}

BoundsReport km_bounds(const KuramotoState& state0, const ModelParams& params, const TargetMatrix& target) {
    require_kappa2(params);
    const double e0 = km_energy(state0, params, target).total;
    const double s = spread(state0.size(), e0, params.kappa2);
    return {target.max_offdiag() + s, target.min_offdiag() - s, e0};
}

FrameworkVerdict km_check(const KuramotoState& state0, const ModelParams& params, const TargetMatrix& target) {
    FrameworkVerdict v;
    const std::size_t n = state0.size();
    const double nn = static_cast<double>(n);
    const double min_t = target.min_offdiag();
    const double max_t = target.max_offdiag();
    const double e0 = km_energy(state0, params, target).total;
    const double max_gap = diameters(state0).pos_diam;

    if (params.kappa2 > 0.0) {
        const BoundsReport b = km_bounds(state0, params, target);
        v.bounds = b;
        v.conditions.push_back(strict("a", "max|theta_i - theta_j| < U < pi", std::min(b.upper - max_gap, kPi - b.upper)));
        v.conditions.push_back(strict("b", "E(0) < kappa2 (min theta_inf)^2 / (2N)",
                                      params.kappa2 * min_t * min_t / (2.0 * nn) - e0));
        v.conditions.push_back(strict("c", "kappa0 cos(U) + kappa1 > 0", params.kappa0 * std::cos(b.upper) + params.kappa1));
    } else {
        v.conditions.push_back(strict("a", "max|theta_i - theta_j| < U < pi", kNegInf));
        v.conditions.push_back(strict("b", "E(0) < kappa2 (min theta_inf)^2 / (2N)", kNegInf));
        v.conditions.push_back(strict("c", "kappa0 cos(U) + kappa1 > 0", kNegInf));
    }
    v.conditions.push_back(strict("d", "kappa2 > 0", params.kappa2));

    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dev = std::abs(state0.theta[j] - state0.theta[i]) - target(i, j);
            lhs += dev * dev;
        }
    }
    const double rhs = std::min(min_t * min_t, (kPi - max_t) * (kPi - max_t));
    v.explicit_condition = non_strict(
        "explicit", "sum_{i<j}(|theta_j - theta_i| - theta_inf)^2 <= min{(min theta_inf)^2, (pi - max theta_inf)^2}",
        rhs - lhs);
    finish(v);
    return v;
}

BoundsReport cs_bounds(const CSState& state0, const ModelParams& params, const TargetMatrix& target) {
    require_kappa2(params);
    const double e0 = cs_energy_no_production(state0, params, target).total;
    const double s = spread(state0.size(), e0, params.kappa2);
    return {target.max_offdiag() + s, target.min_offdiag() - s, e0};
}

FrameworkVerdict cs_check(const CSState& state0, const ModelParams& params, const TargetMatrix& target,
                          const CommWeight& w) {
    FrameworkVerdict v;
    const Diameters diam = diameters(state0);
    const double min_r = min_gap(state0).value;
    v.conditions.push_back(strict("a", "min r_ij(0) > 0", min_r));
    if (params.kappa2 > 0.0) {
        const BoundsReport b = cs_bounds(state0, params, target);
        v.bounds = b;
        const double s = spread(state0.size(), b.e0, params.kappa2);
        v.conditions.push_back(strict("b", "min d_inf > sqrt(2N E(0) / kappa2)", target.min_offdiag() - s));
        v.conditions.push_back(non_strict("c", "max r_ij(0) <= U", b.upper - diam.pos_diam));
    } else {
        v.conditions.push_back(strict("b", "min d_inf > sqrt(2N E(0) / kappa2)", kNegInf));
        v.conditions.push_back(non_strict("c", "max r_ij(0) <= U", kNegInf));
    }
    v.conditions.push_back(strict("d", "kappa0, kappa1, kappa2 > 0", std::min({params.kappa0, params.kappa1, params.kappa2})));
    if (v.bounds) {
        const double upper = std::max(v.bounds->upper, 0.0);
        double psi_m = std::min(psi_eval(w, 0.0), psi_eval(w, upper));
        for (std::size_t k = 0; k < kPsiSamples; ++k) {
            psi_m = std::min(psi_m, psi_eval(w, upper * static_cast<double>(k) / (kPsiSamples - 1)));
        }
        v.conditions.push_back(strict("e", "psi_m = min_[0,U] psi > 0", psi_m));
    } else {
        v.conditions.push_back(strict("e", "psi_m = min_[0,U] psi > 0", kNegInf));
    }
    finish(v);
    return v;
}

FrameworkVerdict check_scenario(const Scenario& s) {
    switch (s.model) {
        case ModelKind::KuramotoBond:
            return km_check(std::get<KuramotoState>(s.initial), s.params, *s.target);
        case ModelKind::CsBond:
            return cs_check(std::get<CSState>(s.initial), s.params, *s.target, s.weight);
        case ModelKind::KuramotoFirstOrder:
            break;
    }
    FrameworkVerdict v;
    v.overall = false;
    return v;
}

}  // namespace bondsim
