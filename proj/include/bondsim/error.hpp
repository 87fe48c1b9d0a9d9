#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bondsim {

enum class ErrorKind {
    DuplicateTarget,
    AsymmetricTarget,
    NonzeroTargetDiagonal,
    NonpositiveTarget,
    MissingTarget,
    DimensionMismatch,
    NonFiniteValue,
    NegativeCoupling,
    InvalidStep,
    InvalidHorizon,
    InvalidWeight,
    SingleAgent,
    OutsideInjectivityRadius,
    NegativeRadius,
    CollisionSingularity,
    GapViolation,
    ZeroKappa2,
    TooFewSamples,
    NonpositiveSamples,
    RootFindFailure,
    OriginHitIllPosed,
    ParseError,
    UnknownScenario,
    SinkError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type; `kind` is the
/// stable identifier the CLI prints, the optional fields carry the location.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::optional<double> time;
    std::optional<std::size_t> line;

private:
    ErrorKind kind_;
};

Error collision_error(std::size_t i, std::size_t j);

}  // namespace bondsim
