#pragma once

#include <optional>
#include <span>
#include <utility>

#include "bondsim/core.hpp"

namespace bondsim {

struct Diameters {
    double pos_diam;
    double vel_diam;
};

Diameters diameters(const KuramotoState& s);
Diameters diameters(const CSState& s);

/// sqrt(sum_{i<j} (gap_ij - target_ij)^2).
double target_error(const KuramotoState& s, const TargetMatrix& target);
double target_error(const CSState& s, const TargetMatrix& target);

struct GapInfo {
    double value;
    std::pair<std::size_t, std::size_t> pair;
};

GapInfo min_gap(const KuramotoState& s);
GapInfo min_gap(const CSState& s);

struct DecayFit {
    double rate = 0.0;
    double intercept = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double rms = 0.0;  // residual in log space
    std::size_t used = 0;
};

/// Least-squares line through (t, ln y) over [window.first, window.second];
/// defaults to the trailing half of the series. Samples below 1e-15 are
/// dropped; zero or negative samples are an error.
DecayFit fit_decay(std::span<const double> t, std::span<const double> y,
                   std::optional<std::pair<double, double>> window = std::nullopt);

}  // namespace bondsim
