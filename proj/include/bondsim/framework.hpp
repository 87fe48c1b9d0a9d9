#pragma once

#include <string>
#include <vector>

#include "bondsim/core.hpp"

namespace bondsim {

struct BoundsReport {
    double upper = 0.0;
    double lower = 0.0;
    double e0 = 0.0;
};

/// One inequality of a sufficient condition. margin > 0 means satisfied with
/// room to spare (margin >= 0 for non-strict inequalities); negative margins
/// measure the violation.
struct Condition {
    std::string name;
    std::string statement;
    bool pass = false;
    double margin = 0.0;
};

struct FrameworkVerdict {
    std::vector<Condition> conditions;
    bool overall = false;  // conjunction of `conditions`
    std::optional<BoundsReport> bounds;  // absent when kappa2 == 0
    std::optional<Condition> explicit_condition;  // phase model only, not part of `overall`

    const Condition* find(std::string_view name) const;
};

BoundsReport km_bounds(const KuramotoState& state0, const ModelParams& params, const TargetMatrix& target);
FrameworkVerdict km_check(const KuramotoState& state0, const ModelParams& params, const TargetMatrix& target);

BoundsReport cs_bounds(const CSState& state0, const ModelParams& params, const TargetMatrix& target);
FrameworkVerdict cs_check(const CSState& state0, const ModelParams& params, const TargetMatrix& target,
                          const CommWeight& w);

/// Dispatches on the scenario's model. The first-order model has no
/// framework and yields an empty failing verdict.
FrameworkVerdict check_scenario(const Scenario& s);

}  // namespace bondsim
