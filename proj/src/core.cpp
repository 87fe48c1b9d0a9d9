#include "bondsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bondsim {

namespace {

constexpr std::string_view kErrorNames[] = {
    "DuplicateTarget",
    "AsymmetricTarget",
    "NonzeroTargetDiagonal",
    "NonpositiveTarget",
    "MissingTarget",
    "DimensionMismatch",
    "NonFiniteValue",
    "NegativeCoupling",
    "InvalidStep",
    "InvalidHorizon",
    "InvalidWeight",
    "SingleAgent",
    "OutsideInjectivityRadius",
    "NegativeRadius",
    "CollisionSingularity",
    "GapViolation",
    "ZeroKappa2",
    "TooFewSamples",
    "NonpositiveSamples",
    "RootFindFailure",
    "OriginHitIllPosed",
    "ParseError",
    "UnknownScenario",
    "SinkError",
};

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); });
}

void require_finite(std::span<const double> values, const char* what) {
    if (!all_finite(values)) {
        throw Error(ErrorKind::NonFiniteValue, std::string(what) + " contains a non-finite entry");
    }
}

}  // namespace

std::string_view error_name(ErrorKind kind) noexcept {
    return kErrorNames[static_cast<std::size_t>(kind)];
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

Error collision_error(std::size_t i, std::size_t j) {
    Error e(ErrorKind::CollisionSingularity,
            "agents " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    e.pair = {i, j};
    return e;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        }
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

double TargetMatrix::min_offdiag() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) best = std::min(best, entries(i, j));
    return best;
}

double TargetMatrix::max_offdiag() const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) best = std::max(best, entries(i, j));
    return best;
}

CommWeight CommWeight::from_table(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw Error(ErrorKind::InvalidWeight, "weight table is empty");
    std::sort(knots.begin(), knots.end());
    for (std::size_t k = 0; k < knots.size(); ++k) {
        const auto [r, psi] = knots[k];
        if (!std::isfinite(r) || !std::isfinite(psi) || r < 0.0 || psi < 0.0) {
            throw Error(ErrorKind::InvalidWeight, "weight table knots must be finite and nonnegative");
        }
        if (k > 0 && knots[k - 1].first == r) {
            throw Error(ErrorKind::InvalidWeight, "weight table has a repeated radius");
        }
    }
    return {WeightKind::Table, std::move(knots)};
}

std::string_view model_name(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::KuramotoBond: return "kuramoto-bond";
        case ModelKind::KuramotoFirstOrder: return "kuramoto-first-order";
        case ModelKind::CsBond: return "cs-bond";
    }
    return "";
}

std::optional<ModelKind> model_from_name(std::string_view name) noexcept {
    for (auto kind : {ModelKind::KuramotoBond, ModelKind::KuramotoFirstOrder, ModelKind::CsBond}) {
        if (model_name(kind) == name) return kind;
    }
    return std::nullopt;
}

std::size_t Scenario::agents() const {
    return std::visit([](const auto& st) { return st.size(); }, initial);
}

TargetMatrix target_from_phases(std::span<const double> theta_star) {
    const std::size_t n = theta_star.size();
    if (n < 2) throw Error(ErrorKind::SingleAgent, "target needs at least two phases");
    require_finite(theta_star, "target phases");
    TargetMatrix target{Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(theta_star[i] - theta_star[j]);
            if (gap == 0.0) {
                throw Error(ErrorKind::DuplicateTarget,
                            "target phases " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
            target.entries(i, j) = gap;
            target.entries(j, i) = gap;
        }
    }
    return target;
}

TargetMatrix target_from_points(const Matrix& points) {
    const std::size_t n = points.rows();
    if (n < 2) throw Error(ErrorKind::SingleAgent, "target needs at least two points");
    require_finite(points.flat(), "target points");
    TargetMatrix target{Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < points.cols(); ++k) {
                const double d = points(i, k) - points(j, k);
                sq += d * d;
            }
            const double dist = std::sqrt(sq);
            if (dist == 0.0) {
                throw Error(ErrorKind::DuplicateTarget,
                            "target points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
            target.entries(i, j) = dist;
            target.entries(j, i) = dist;
        }
    }
    return target;
}

void check_target(const TargetMatrix& target) {
    const std::size_t n = target.size();
    if (target.entries.cols() != n) throw Error(ErrorKind::DimensionMismatch, "target matrix is not square");
    require_finite(target.entries.flat(), "target matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (target(i, i) != 0.0) {
            throw Error(ErrorKind::NonzeroTargetDiagonal, "target(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (target(i, j) != target(j, i)) {
                throw Error(ErrorKind::AsymmetricTarget,
                            "target(" + std::to_string(i) + "," + std::to_string(j) + ") != target(" +
                                std::to_string(j) + "," + std::to_string(i) + ")");
            }
            if (!(target(i, j) > 0.0)) {
                throw Error(ErrorKind::NonpositiveTarget,
                            "target(" + std::to_string(i) + "," + std::to_string(j) + ") must be positive");
            }
        }
    }
}

void validate_scenario(const Scenario& s) {
    const ModelParams& p = s.params;
    if (!std::isfinite(p.kappa0) || !std::isfinite(p.kappa1) || !std::isfinite(p.kappa2)) {
        throw Error(ErrorKind::NonFiniteValue, "coupling strengths must be finite");
    }
    if (p.kappa0 < 0.0 || p.kappa1 < 0.0 || p.kappa2 < 0.0) {
        throw Error(ErrorKind::NegativeCoupling, "coupling strengths must be nonnegative");
    }
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw Error(ErrorKind::InvalidStep, "dt must be positive");
    if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) throw Error(ErrorKind::InvalidHorizon, "t_end must be positive");
    if (s.stride == 0) throw Error(ErrorKind::InvalidStep, "stride must be at least 1");
    if (std::isnan(s.gap_floor)) throw Error(ErrorKind::NonFiniteValue, "gap_floor is NaN");

    const bool phase_model = s.model != ModelKind::CsBond;
    if (phase_model != std::holds_alternative<KuramotoState>(s.initial)) {
        throw Error(ErrorKind::DimensionMismatch, "initial state does not match the model");
    }

    const std::size_t n = s.agents();
    if (n < 2) throw Error(ErrorKind::SingleAgent, "at least two agents are required");

    if (phase_model) {
        const auto& st = std::get<KuramotoState>(s.initial);
        if (s.model == ModelKind::KuramotoBond && st.omega.size() != n) {
            throw Error(ErrorKind::DimensionMismatch, "theta and omega lengths differ");
        }
        if (s.model == ModelKind::KuramotoFirstOrder && !st.omega.empty() && st.omega.size() != n) {
            throw Error(ErrorKind::DimensionMismatch, "theta and omega lengths differ");
        }
        require_finite(st.theta, "initial theta");
        require_finite(st.omega, "initial omega");
    } else {
        const auto& st = std::get<CSState>(s.initial);
        if (st.x.rows() != st.v.rows() || st.x.cols() != st.v.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "position and velocity shapes differ");
        }
        if (st.dim() == 0) throw Error(ErrorKind::DimensionMismatch, "spatial dimension must be positive");
        require_finite(st.x.flat(), "initial positions");
        require_finite(st.v.flat(), "initial velocities");
    }

    if (!s.nu.empty()) {
        if (s.model != ModelKind::KuramotoFirstOrder) {
            throw Error(ErrorKind::DimensionMismatch, "natural frequencies only apply to the first-order model");
        }
        if (s.nu.size() != n) throw Error(ErrorKind::DimensionMismatch, "nu length differs from agent count");
        require_finite(s.nu, "natural frequencies");
    }

    if (s.model != ModelKind::KuramotoFirstOrder && !s.target) {
        throw Error(ErrorKind::MissingTarget, "bonded models need a target matrix");
    }
    if (s.target) {
        if (s.target->size() != n) throw Error(ErrorKind::DimensionMismatch, "target size differs from agent count");
        check_target(*s.target);
    }

    if (s.model == ModelKind::CsBond && s.weight.kind == WeightKind::Table) {
        // re-run the knot checks for hand-assembled tables
        (void)CommWeight::from_table(s.weight.table);
    }
}

}  // namespace bondsim
