#include "bondsim/cucker_smale.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace bondsim {

double psi_eval(const CommWeight& w, double r) {
    if (r < 0.0) throw Error(ErrorKind::NegativeRadius, "psi evaluated at r = " + std::to_string(r));
    switch (w.kind) {
        case WeightKind::ConstantOne:
            return 1.0;
        case WeightKind::Algebraic:
            return 1.0 / (1.0 + r);
        case WeightKind::Table: {
            const auto& t = w.table;
            if (t.empty()) throw Error(ErrorKind::InvalidWeight, "weight table is empty");
            if (r <= t.front().first) return t.front().second;
            if (r >= t.back().first) return t.back().second;
            auto hi = std::upper_bound(t.begin(), t.end(), r,
                                       [](double value, const auto& knot) { return value < knot.first; });
            auto lo = hi - 1;
            const double s = (r - lo->first) / (hi->first - lo->first);
            return lo->second + s * (hi->second - lo->second);
        }
    }
    return 0.0;
}

void csbf_rhs(std::span<const double> y, std::span<double> dy, std::size_t n, std::size_t d,
              const ModelParams& params, const TargetMatrix& target, const CommWeight& w) {
    const std::size_t nd = n * d;
    const double* x = y.data();
    const double* v = y.data() + nd;
    double* dx = dy.data();
    double* dv = dy.data() + nd;
    std::copy(v, v + nd, dx);
    std::fill(dv, dv + nd, 0.0);

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> u(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double r2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                u[k] = x[j * d + k] - x[i * d + k];
                r2 += u[k] * u[k];
            }
            const double r = std::sqrt(r2);
            if (r == 0.0) throw collision_error(std::min(i, j), std::max(i, j));
            double radial_v = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                u[k] /= r;
                radial_v += (v[j * d + k] - v[i * d + k]) * u[k];
            }
            const double a = params.kappa0 * psi_eval(w, r);
            const double b = params.kappa1 * radial_v + params.kappa2 * (r - target(i, j));
            for (std::size_t k = 0; k < d; ++k) {
                dv[i * d + k] += inv_n * (a * (v[j * d + k] - v[i * d + k]) + b * u[k]);
            }
        }
    }
}

CSDeriv csbf_rhs(const CSState& state, const ModelParams& params, const TargetMatrix& target,
                 const CommWeight& w) {
    const std::size_t n = state.size();
    const std::size_t d = state.dim();
    if (state.v.rows() != n || state.v.cols() != d || target.size() != n) {
        throw Error(ErrorKind::DimensionMismatch, "state and target shapes are inconsistent");
    }
    std::vector<double> y(state.x.flat().begin(), state.x.flat().end());
    y.insert(y.end(), state.v.flat().begin(), state.v.flat().end());
    std::vector<double> dy(y.size());
    csbf_rhs(y, dy, n, d, params, target, w);
    CSDeriv out{Matrix(n, d), Matrix(n, d)};
    std::copy(dy.begin(), dy.begin() + n * d, out.dx.flat().begin());
    std::copy(dy.begin() + n * d, dy.end(), out.dv.flat().begin());
    return out;
}

double distance(const Matrix& x, std::size_t i, std::size_t j) {
    double sq = 0.0;
    for (std::size_t k = 0; k < x.cols(); ++k) {
        const double diff = x(i, k) - x(j, k);
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

PairDeviation pair_deviation(const CSState& state, const TargetMatrix& target, std::size_t i, std::size_t j) {
    const double r = distance(state.x, i, j);
    if (r == 0.0) throw collision_error(std::min(i, j), std::max(i, j));
    double edot = 0.0;
    for (std::size_t k = 0; k < state.dim(); ++k) {
        edot += (state.v(i, k) - state.v(j, k)) * (state.x(i, k) - state.x(j, k));
    }
    return {r - target(i, j), edot / r};
}

}  // namespace bondsim
