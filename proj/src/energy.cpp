#include "bondsim/energy.hpp"

#include <algorithm>
#include <cmath>

#include "bondsim/cucker_smale.hpp"

namespace bondsim {

EnergyReport km_energy(const KuramotoState& state, const ModelParams& params, const TargetMatrix& target) {
    const std::size_t n = state.size();
    const double nn = static_cast<double>(n);
    double kinetic = 0.0;
    for (double w : state.omega) kinetic += w * w;
    double pot = 0.0;
    double prod = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dth = state.theta[j] - state.theta[i];
            const double dev = std::abs(dth) - target(i, j);
            pot += dev * dev;
            const double dw = state.omega[j] - state.omega[i];
            prod += (params.kappa0 * std::cos(dth) + params.kappa1) * dw * dw;
        }
    }
    EnergyReport r;
    r.kinetic = 0.5 * kinetic;
    r.potential = params.kappa2 / (4.0 * nn) * pot;
    r.total = r.kinetic + r.potential;
    r.production = prod / (2.0 * nn);
    return r;
}

EnergyReport cs_energy_no_production(const CSState& state, const ModelParams& params, const TargetMatrix& target) {
    const std::size_t n = state.size();
    double kinetic = 0.0;
    for (double v : state.v.flat()) kinetic += v * v;
    double pot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dev = distance(state.x, i, j) - target(i, j);
            pot += dev * dev;
        }
    }
    EnergyReport r;
    r.kinetic = 0.5 * kinetic;
    r.potential = params.kappa2 / (4.0 * static_cast<double>(n)) * pot;
    r.total = r.kinetic + r.potential;
    return r;
}

EnergyReport cs_energy(const CSState& state, const ModelParams& params, const TargetMatrix& target,
                       const CommWeight& w) {
    EnergyReport r = cs_energy_no_production(state, params, target);
    const std::size_t n = state.size();
    const std::size_t d = state.dim();
    double align = 0.0;
    double radial = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double rij = distance(state.x, i, j);
            if (rij == 0.0) throw collision_error(std::min(i, j), std::max(i, j));
            double dv2 = 0.0;
            double proj = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double dv = state.v(j, k) - state.v(i, k);
                dv2 += dv * dv;
                proj += dv * (state.x(j, k) - state.x(i, k));
            }
            proj /= rij;
            align += psi_eval(w, rij) * dv2;
            radial += proj * proj;
        }
    }
    const double two_n = 2.0 * static_cast<double>(n);
    r.production = params.kappa0 / two_n * align + params.kappa1 / two_n * radial;
    return r;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t m = f.size();
    std::vector<double> out(m, 0.0);
    if (m < 3) throw Error(ErrorKind::TooFewSamples, "quadrature needs at least 3 samples");
    // even[k] holds plain Simpson over [0, k] for even k
    std::vector<double> even(m, 0.0);
    for (std::size_t k = 2; k < m; k += 2) {
        even[k] = even[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    }
    out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    for (std::size_t k = 2; k < m; ++k) {
        if (k % 2 == 0) {
            out[k] = even[k];
        } else {
            const double tail = 3.0 * h / 8.0 * (f[k - 3] + 3.0 * f[k - 2] + 3.0 * f[k - 1] + f[k]);
            out[k] = even[k - 3] + tail;
        }
    }
    return out;
}

double energy_balance_residual(std::span<const EnergyReport> samples, double dt) {
    if (samples.size() < 3) throw Error(ErrorKind::TooFewSamples, "energy balance needs at least 3 samples");
    std::vector<double> prod(samples.size());
    std::transform(samples.begin(), samples.end(), prod.begin(), [](const EnergyReport& e) { return e.production; });
    const auto integral = cumulative_simpson(prod, dt);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        worst = std::max(worst, std::abs(samples[k].total + integral[k] - samples[0].total));
    }
    return worst;
}

}  // namespace bondsim
