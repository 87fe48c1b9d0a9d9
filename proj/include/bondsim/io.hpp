#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bondsim/core.hpp"
#include "bondsim/diagnostics.hpp"
#include "bondsim/filippov2.hpp"
#include "bondsim/framework.hpp"
#include "bondsim/integrator.hpp"
#include "json.hpp"

namespace bondsim {

/// Scenario files are INI-like:
///
///   [model]   kind = kuramoto-bond | kuramoto-first-order | cs-bond
///             note = free text (optional)
///   [params]  kappa0, kappa1, kappa2; nu = list (first-order model only)
///   [target]  phases = list rad|deg  |  points = rows  |  matrix = rows [rad|deg]
///   [initial] theta = list rad|deg; omega = list | constrained
///             x = rows; v = rows        (rows separated by ';')
///   [run]     dt, t_end (required); weight, gap_floor, stride (optional)
///
/// `#` starts a comment. Parsed scenarios are validated.
Scenario parse_scenario(std::string_view text);

/// Inverse of parse_scenario; numbers carry 17 significant digits.
std::string emit_scenario(const Scenario& s);

/// km-5.1, cs2d-5.2 or cs1d-5.2.
Scenario builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// `builtin:NAME` or a path to a scenario file.
Scenario load_scenario(const std::string& source);

enum class SeriesFormat { Csv, Json };

std::vector<std::string> series_header(const AnyTrajectory& traj);

void write_series(const KuramotoTrajectory& traj, SeriesFormat format, std::ostream& out);
void write_series(const CSTrajectory& traj, SeriesFormat format, std::ostream& out);
void write_series(const AnyTrajectory& traj, SeriesFormat format, std::ostream& out);

struct SeriesTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const;
};

SeriesTable read_series_csv(std::istream& in);

/// printf("%.17g"), with inf/nan spelled as inf, -inf, nan.
std::string format_number(double x);

nlohmann::json to_json(const FrameworkVerdict& v);
nlohmann::json to_json(const FilippovResult& r);
nlohmann::json to_json(const DecayFit& f);
nlohmann::json to_json(const Error& e);

}  // namespace bondsim
