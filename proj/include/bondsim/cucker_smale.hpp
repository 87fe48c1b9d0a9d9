#pragma once

#include <cstddef>
#include <span>

#include "bondsim/core.hpp"

namespace bondsim {

double psi_eval(const CommWeight& w, double r);

struct CSDeriv {
    Matrix dx;
    Matrix dv;
};

CSDeriv csbf_rhs(const CSState& state, const ModelParams& params, const TargetMatrix& target,
                 const CommWeight& w);

/// Flat-buffer variant: y = (x rows, v rows), each n*d long.
void csbf_rhs(std::span<const double> y, std::span<double> dy, std::size_t n, std::size_t d,
              const ModelParams& params, const TargetMatrix& target, const CommWeight& w);

struct PairDeviation {
    double e;     // r_ij - d_inf_ij
    double edot;  // d/dt r_ij
};

PairDeviation pair_deviation(const CSState& state, const TargetMatrix& target, std::size_t i, std::size_t j);

/// Euclidean distance between rows i and j.
double distance(const Matrix& x, std::size_t i, std::size_t j);

}  // namespace bondsim
