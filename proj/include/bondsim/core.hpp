#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bondsim/error.hpp"

namespace bondsim {

/// Coupling strengths shared by both models: alignment (kappa0), radial or
/// frequency damping of the bond (kappa1) and the bond spring (kappa2).
struct ModelParams {
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Dense row-major matrix. Small by construction (n agents by d dimensions,
/// or n by n).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Desired pairwise spacings: radians for the phase model, length for the
/// particle model. Construction does not validate; see check_target.
struct TargetMatrix {
    Matrix entries;

    std::size_t size() const noexcept { return entries.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }

    /// Smallest / largest off-diagonal entry.
    double min_offdiag() const;
    double max_offdiag() const;

    friend bool operator==(const TargetMatrix&, const TargetMatrix&) = default;
};

struct KuramotoState {
    double t = 0.0;
    std::vector<double> theta;  // unwrapped, radians
    std::vector<double> omega;

    std::size_t size() const noexcept { return theta.size(); }
    friend bool operator==(const KuramotoState&, const KuramotoState&) = default;
};

struct CSState {
    double t = 0.0;
    Matrix x;  // n x d positions
    Matrix v;  // n x d velocities

    std::size_t size() const noexcept { return x.rows(); }
    std::size_t dim() const noexcept { return x.cols(); }
    friend bool operator==(const CSState&, const CSState&) = default;
};

enum class WeightKind { ConstantOne, Algebraic, Table };

/// Communication weight psi(r). Algebraic is 1/(1+r); Table interpolates
/// linearly between knots (sorted by r) and extrapolates constantly.
struct CommWeight {
    WeightKind kind = WeightKind::Algebraic;
    std::vector<std::pair<double, double>> table;

    static CommWeight constant_one() { return {WeightKind::ConstantOne, {}}; }
    static CommWeight algebraic() { return {WeightKind::Algebraic, {}}; }
    static CommWeight from_table(std::vector<std::pair<double, double>> knots);

    friend bool operator==(const CommWeight&, const CommWeight&) = default;
};

enum class ModelKind { KuramotoBond, KuramotoFirstOrder, CsBond };

std::string_view model_name(ModelKind kind) noexcept;
std::optional<ModelKind> model_from_name(std::string_view name) noexcept;

struct Scenario {
    ModelKind model = ModelKind::KuramotoBond;
    ModelParams params;
    std::vector<double> nu;  // natural frequencies, first-order model only; empty means zero
    std::optional<TargetMatrix> target;
    std::variant<KuramotoState, CSState> initial;
    double dt = 1e-2;
    double t_end = 1.0;
    CommWeight weight = CommWeight::algebraic();
    double gap_floor = 1e-6;
    std::size_t stride = 1;
    std::string note;

    std::size_t agents() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// theta_inf(i,j) = |theta*_i - theta*_j|.
TargetMatrix target_from_phases(std::span<const double> theta_star);

/// d_inf(i,j) = ||s_i - s_j||.
TargetMatrix target_from_points(const Matrix& points);

/// Throws on the first violated TargetMatrix invariant.
void check_target(const TargetMatrix& target);

void validate_scenario(const Scenario& s);

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Sign with sgn(0) = 0.
inline int sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace bondsim
