#include "bondsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "bondsim/kuramoto.hpp"

namespace bondsim {

namespace {

using json = nlohmann::json;

Error parse_error(std::size_t line, const std::string& msg) {
    Error e(ErrorKind::ParseError, (line ? "line " + std::to_string(line) + ": " : std::string()) + msg);
    if (line) e.line = line;
    return e;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == ',' || s[j] == '\r')) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line, std::string_view key) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw parse_error(line, std::string(key) + ": '" + std::string(tok) + "' is not a number");
    }
    return value;
}

std::vector<double> parse_list(std::string_view value, std::size_t line, std::string_view key) {
    std::vector<double> out;
    for (auto tok : tokens(value)) out.push_back(parse_double(tok, line, key));
    return out;
}

enum class Unit { None, Rad, Deg };

/// Splits a trailing rad/deg token off `value`.
Unit take_unit(std::string_view& value) {
    const auto t = trim(value);
    const auto pos = t.find_last_of(" \t,");
    const auto last = pos == std::string_view::npos ? t : t.substr(pos + 1);
    Unit u = Unit::None;
    if (last == "rad") u = Unit::Rad;
    if (last == "deg") u = Unit::Deg;
    if (u != Unit::None) value = pos == std::string_view::npos ? std::string_view{} : t.substr(0, pos);
    return u;
}

std::vector<double> parse_angles(std::string_view value, std::size_t line, std::string_view key) {
    const Unit u = take_unit(value);
    if (u == Unit::None) throw parse_error(line, std::string(key) + " needs a unit suffix (rad or deg)");
    auto out = parse_list(value, line, key);
    if (u == Unit::Deg)
        for (auto& x : out) x = deg_to_rad(x);
    return out;
}

Matrix parse_rows(std::string_view value, std::size_t line, std::string_view key) {
    std::vector<std::vector<double>> rows;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto end = value.find(';', start);
        if (end == std::string_view::npos) end = value.size();
        const auto part = trim(value.substr(start, end - start));
        if (!part.empty()) rows.push_back(parse_list(part, line, key));
        start = end + 1;
    }
    if (rows.empty()) throw parse_error(line, std::string(key) + " is empty");
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw parse_error(line, std::string(key) + " has rows of different length");
    }
    return Matrix::from_rows(rows);
}

struct Entry {
    std::string value;
    std::size_t line;
};

using Section = std::map<std::string, Entry, std::less<>>;

const std::map<std::string, std::vector<std::string>, std::less<>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
        {"model", {"kind", "note"}},
        {"params", {"kappa0", "kappa1", "kappa2", "nu"}},
        {"target", {"phases", "points", "matrix"}},
        {"initial", {"theta", "omega", "x", "v"}},
        {"run", {"dt", "t_end", "weight", "gap_floor", "stride"}},
    };
    return keys;
}

class Document {
public:
    explicit Document(std::string_view text) {
        std::size_t line_no = 0;
        std::string current;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view raw = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            const auto hash = raw.find('#');
            // the note keeps its '#' characters
            auto line = trim(raw);
            if (!(line.substr(0, 4) == "note" && current == "model")) {
                line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
            }
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw parse_error(line_no, "unterminated section header");
                current = std::string(trim(line.substr(1, line.size() - 2)));
                if (!known_keys().count(current)) throw parse_error(line_no, "unknown section [" + current + "]");
                sections_[current];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw parse_error(line_no, "expected key = value");
            if (current.empty()) throw parse_error(line_no, "key outside of a section");
            const std::string key(trim(line.substr(0, eq)));
            const auto& allowed = known_keys().at(current);
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                throw parse_error(line_no, "unknown key '" + key + "' in [" + current + "]");
            }
            auto& sec = sections_[current];
            if (sec.count(key)) throw parse_error(line_no, "duplicate key '" + key + "'");
            sec[key] = {std::string(trim(line.substr(eq + 1))), line_no};
        }
    }

    const Entry* find(std::string_view section, std::string_view key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    const Entry& require(std::string_view section, std::string_view key) const {
        if (const Entry* e = find(section, key)) return *e;
        throw parse_error(0, "missing field [" + std::string(section) + "] " + std::string(key));
    }

    double number(std::string_view section, std::string_view key) const {
        const Entry& e = require(section, key);
        const auto t = tokens(e.value);
        if (t.size() != 1) throw parse_error(e.line, std::string(key) + " expects one number");
        return parse_double(t.front(), e.line, key);
    }

private:
    std::map<std::string, Section, std::less<>> sections_;
};

CommWeight parse_weight(const Entry& e) {
    const auto t = tokens(e.value);
    if (t.empty()) throw parse_error(e.line, "weight is empty");
    if (t.front() == "algebraic" && t.size() == 1) return CommWeight::algebraic();
    if (t.front() == "constant-one" && t.size() == 1) return CommWeight::constant_one();
    if (t.front() == "table") {
        std::vector<std::pair<double, double>> knots;
        for (std::size_t k = 1; k < t.size(); ++k) {
            const auto colon = t[k].find(':');
            if (colon == std::string_view::npos) throw parse_error(e.line, "table knots are written r:psi");
            knots.emplace_back(parse_double(t[k].substr(0, colon), e.line, "weight"),
                               parse_double(t[k].substr(colon + 1), e.line, "weight"));
        }
        return CommWeight::from_table(std::move(knots));
    }
    throw parse_error(e.line, "weight must be algebraic, constant-one or table r:psi ...");
}

std::string join(std::span<const double> xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ' ';
        out += format_number(xs[k]);
    }
    return out;
}

std::string join_rows(const Matrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += "; ";
        out += join(m.row(r));
    }
    return out;
}

json num(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

void check_sink(std::ostream& out) {
    if (!out) throw Error(ErrorKind::SinkError, "output stream failed");
}

std::vector<double> sample_row(const KuramotoState& st, const SampleDiagnostics& d) {
    std::vector<double> row{st.t};
    row.insert(row.end(), st.theta.begin(), st.theta.end());
    row.insert(row.end(), st.omega.begin(), st.omega.end());
    row.insert(row.end(), {d.energy.kinetic, d.energy.potential, d.energy.total, d.energy.production, d.min_gap,
                           d.pos_diam, d.vel_diam});
    return row;
}

std::vector<double> sample_row(const CSState& st, const SampleDiagnostics& d) {
    std::vector<double> row{st.t};
    row.insert(row.end(), st.x.flat().begin(), st.x.flat().end());
    row.insert(row.end(), st.v.flat().begin(), st.v.flat().end());
    row.insert(row.end(), {d.energy.kinetic, d.energy.potential, d.energy.total, d.energy.production, d.min_gap,
                           d.pos_diam, d.vel_diam});
    return row;
}

const char* const kDiagColumns[] = {"E_kinetic", "E_potential", "E_total", "production", "min_gap", "pos_diam", "vel_diam"};

std::vector<std::string> header_for(const KuramotoState& st) {
    std::vector<std::string> h{"t"};
    for (std::size_t i = 1; i <= st.size(); ++i) h.push_back("theta_" + std::to_string(i));
    for (std::size_t i = 1; i <= st.size(); ++i) h.push_back("omega_" + std::to_string(i));
    for (const char* c : kDiagColumns) h.emplace_back(c);
    return h;
}

std::vector<std::string> header_for(const CSState& st) {
    std::vector<std::string> h{"t"};
    for (const char* var : {"x", "v"}) {
        for (std::size_t i = 1; i <= st.size(); ++i)
            for (std::size_t k = 1; k <= st.dim(); ++k)
                h.push_back(std::string(var) + "_" + std::to_string(i) + "_" + std::to_string(k));
    }
    for (const char* c : kDiagColumns) h.emplace_back(c);
    return h;
}

template <class State>
void write_impl(const Trajectory<State>& traj, SeriesFormat format, std::ostream& out) {
    if (traj.states.empty()) throw Error(ErrorKind::SinkError, "trajectory has no samples");
    const auto header = header_for(traj.states.front());
    if (format == SeriesFormat::Csv) {
        std::string buf;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c) buf += ',';
            buf += header[c];
        }
        buf += '\n';
        out << buf;
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const auto row = sample_row(traj.states[k], traj.diagnostics[k]);
            buf.clear();
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) buf += ',';
                buf += format_number(row[c]);
            }
            buf += '\n';
            out << buf;
        }
    } else {
        json doc;
        doc["model"] = std::string(model_name(traj.model));
        doc["dt"] = traj.dt;
        doc["columns"] = header;
        json rows = json::array();
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            json row = json::array();
            for (double x : sample_row(traj.states[k], traj.diagnostics[k])) row.push_back(num(x));
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        doc["failure"] = traj.failure ? to_json(*traj.failure) : json(nullptr);
        out << doc.dump(1) << '\n';
    }
    check_sink(out);
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Scenario parse_scenario(std::string_view text) {
    const Document doc(text);
    Scenario s;

    const Entry& kind = doc.require("model", "kind");
    const auto model = model_from_name(trim(kind.value));
    if (!model) throw parse_error(kind.line, "unknown model '" + kind.value + "'");
    s.model = *model;
    if (const Entry* note = doc.find("model", "note")) s.note = note->value;

    s.params.kappa0 = doc.number("params", "kappa0");
    s.params.kappa1 = doc.number("params", "kappa1");
    s.params.kappa2 = doc.number("params", "kappa2");
    if (const Entry* nu = doc.find("params", "nu")) s.nu = parse_list(nu->value, nu->line, "nu");

    const bool phase_model = s.model != ModelKind::CsBond;
    const Entry* phases = doc.find("target", "phases");
    const Entry* points = doc.find("target", "points");
    const Entry* matrix = doc.find("target", "matrix");
    if ((phases != nullptr) + (points != nullptr) + (matrix != nullptr) > 1) {
        throw parse_error(0, "[target] takes exactly one of phases, points, matrix");
    }
    if (phases) {
        if (!phase_model) throw parse_error(phases->line, "phases targets need a Kuramoto model");
        s.target = target_from_phases(parse_angles(phases->value, phases->line, "phases"));
    } else if (points) {
        if (phase_model) throw parse_error(points->line, "points targets need the cs-bond model");
        s.target = target_from_points(parse_rows(points->value, points->line, "points"));
    } else if (matrix) {
        std::string_view value = matrix->value;
        const Unit u = take_unit(value);
        if (phase_model && u == Unit::None) throw parse_error(matrix->line, "matrix needs a unit suffix (rad or deg)");
        if (!phase_model && u != Unit::None) throw parse_error(matrix->line, "cs-bond target lengths take no unit");
        Matrix m = parse_rows(value, matrix->line, "matrix");
        if (u == Unit::Deg)
            for (auto& x : m.flat()) x = deg_to_rad(x);
        s.target = TargetMatrix{std::move(m)};
    }

    if (phase_model) {
        const Entry& theta = doc.require("initial", "theta");
        KuramotoState st;
        st.theta = parse_angles(theta.value, theta.line, "theta");
        if (doc.find("initial", "x") || doc.find("initial", "v")) {
            throw parse_error(theta.line, "x and v belong to the cs-bond model");
        }
        const Entry* omega = doc.find("initial", "omega");
        if (!omega && s.model == ModelKind::KuramotoBond) doc.require("initial", "omega");
        if (omega) {
            if (trim(omega->value) == "constrained") {
                st.omega = constrained_initial_frequencies(st.theta, Km1Params{s.params.kappa0, s.nu});
            } else {
                st.omega = parse_list(omega->value, omega->line, "omega");
            }
        }
        s.initial = std::move(st);
    } else {
        const Entry& x = doc.require("initial", "x");
        const Entry& v = doc.require("initial", "v");
        if (doc.find("initial", "theta") || doc.find("initial", "omega")) {
            throw parse_error(x.line, "theta and omega belong to the Kuramoto models");
        }
        s.initial = CSState{0.0, parse_rows(x.value, x.line, "x"), parse_rows(v.value, v.line, "v")};
    }

    s.dt = doc.number("run", "dt");
    s.t_end = doc.number("run", "t_end");
    if (const Entry* w = doc.find("run", "weight")) s.weight = parse_weight(*w);
    if (doc.find("run", "gap_floor")) s.gap_floor = doc.number("run", "gap_floor");
    if (const Entry* st = doc.find("run", "stride")) {
        const double k = doc.number("run", "stride");
        if (!(k >= 1.0) || k != std::floor(k)) throw parse_error(st->line, "stride must be a positive integer");
        s.stride = static_cast<std::size_t>(k);
    }

    validate_scenario(s);
    return s;
}

std::string emit_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[model]\nkind = " << model_name(s.model) << '\n';
    if (!s.note.empty()) out << "note = " << s.note << '\n';

    out << "\n[params]\n";
    out << "kappa0 = " << format_number(s.params.kappa0) << '\n';
    out << "kappa1 = " << format_number(s.params.kappa1) << '\n';
    out << "kappa2 = " << format_number(s.params.kappa2) << '\n';
    if (!s.nu.empty()) out << "nu = " << join(s.nu) << '\n';

    const bool phase_model = s.model != ModelKind::CsBond;
    if (s.target) {
        out << "\n[target]\nmatrix = " << join_rows(s.target->entries) << (phase_model ? " rad" : "") << '\n';
    }

    out << "\n[initial]\n";
    if (const auto* k = std::get_if<KuramotoState>(&s.initial)) {
        out << "theta = " << join(k->theta) << " rad\n";
        if (!k->omega.empty()) out << "omega = " << join(k->omega) << '\n';
    } else {
        const auto& c = std::get<CSState>(s.initial);
        out << "x = " << join_rows(c.x) << '\n';
        out << "v = " << join_rows(c.v) << '\n';
    }

    out << "\n[run]\n";
    out << "dt = " << format_number(s.dt) << '\n';
    out << "t_end = " << format_number(s.t_end) << '\n';
    switch (s.weight.kind) {
        case WeightKind::Algebraic: out << "weight = algebraic\n"; break;
        case WeightKind::ConstantOne: out << "weight = constant-one\n"; break;
        case WeightKind::Table:
            out << "weight = table";
            for (const auto& [r, psi] : s.weight.table) out << ' ' << format_number(r) << ':' << format_number(psi);
            out << '\n';
            break;
    }
    out << "gap_floor = " << format_number(s.gap_floor) << '\n';
    out << "stride = " << s.stride << '\n';
    return out.str();
}

std::vector<std::string> builtin_names() { return {"km-5.1", "cs2d-5.2", "cs1d-5.2"}; }

Scenario builtin(std::string_view name) {
    Scenario s;
    if (name == "km-5.1") {
        s.model = ModelKind::KuramotoBond;
        s.params = {1.0, 5.0, 10.0};
        std::vector<double> theta{0.1979, 0.2580, 0.2601, 0.4231, 0.4635, 0.5011, 0.5947, 0.8710, 0.9262, 0.9722};
        std::vector<double> star;
        for (int i = 1; i <= 10; ++i) {
            double deg = 0.0;
            if (i <= 3) {
                deg = 3.5 * (i - 1);
            } else if (i <= 7) {
                deg = 12.5 + 4.0 * (i - 4);
            } else {
                deg = 40.0 + 5.0 * (i - 8);
            }
            star.push_back(deg_to_rad(deg));
        }
        s.target = target_from_phases(star);
        auto omega = constrained_initial_frequencies(theta, Km1Params{1.0, {}});
        s.initial = KuramotoState{0.0, std::move(theta), std::move(omega)};
        s.dt = 1e-2;
        s.t_end = 5.0;
        s.note = "omega from the first-order right-hand side with kappa0 = 1 and nu = 0, which has zero sum";
    } else if (name == "cs2d-5.2") {
        s.model = ModelKind::CsBond;
        s.params = {1.0, 5.0, 10.0};
        const Matrix x = Matrix::from_rows({{2.9415, 1.0133},
                                            {-0.1868, 3.0893},
                                            {-2.8378, 0.6900},
                                            {-1.8895, -2.4844},
                                            {1.9088, -2.3172},
                                            {0.4133, 0.9212},
                                            {-0.4425, 0.7271},
                                            {-0.8685, -0.5283},
                                            {-0.0589, -0.9098},
                                            {1.0304, -0.2013}});
        const Matrix v = Matrix::from_rows({{0.0100, -0.1275},
                                            {0.0874, 0.2318},
                                            {0.0192, 0.1613},
                                            {0.0450, 0.0151},
                                            {0.0099, -0.0733},
                                            {0.0301, -0.1290},
                                            {-0.1415, -0.1233},
                                            {-0.2134, 0.1876},
                                            {0.0256, -0.0149},
                                            {0.1278, -0.1280}});
        Matrix pts(10, 2);
        for (int i = 1; i <= 10; ++i) {
            const bool outer = i <= 5;
            const double radius = outer ? 1.5 : 0.5;
            const double deg = outer ? 18.0 + 72.0 * (i - 1) : 54.0 + 72.0 * (i - 6);
            pts(i - 1, 0) = radius * std::cos(deg_to_rad(deg));
            pts(i - 1, 1) = radius * std::sin(deg_to_rad(deg));
        }
        s.target = target_from_points(pts);
        s.initial = CSState{0.0, x, v};
        s.dt = 1e-2;
        s.t_end = 10.0;
        s.weight = CommWeight::algebraic();
        s.note = "outer pentagon radius 1.5 at 18 + 72k degrees, inner radius 0.5 at 54 + 72k degrees";
    } else if (name == "cs1d-5.2") {
        s.model = ModelKind::CsBond;
        s.params = {1.0, 1.0, 40.0};
        const std::vector<double> x0{-29.5926, -16.5471, -8.9365, -3.5433, -0.6838,
                                     1.0488,   4.1392,   9.2734,  17.4788, 30.4824};
        const std::vector<double> xs{-30, -17, -9, -4, -1, 1, 4, 9, 17, 30};
        Matrix x(10, 1);
        Matrix pts(10, 1);
        for (std::size_t i = 0; i < 10; ++i) {
            x(i, 0) = x0[i];
            pts(i, 0) = xs[i];
        }
        s.target = target_from_points(pts);
        s.initial = CSState{0.0, x, Matrix(10, 1)};
        s.dt = 1e-2;
        s.t_end = 10.0;
        s.weight = CommWeight::algebraic();
        s.note = "initial velocities are zero";
    } else {
        throw Error(ErrorKind::UnknownScenario, "no builtin scenario named '" + std::string(name) + "'");
    }
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& source) {
    constexpr std::string_view prefix = "builtin:";
    if (source.rfind(prefix, 0) == 0) return builtin(std::string_view(source).substr(prefix.size()));
    std::ifstream in(source, std::ios::binary);
    if (!in) throw parse_error(0, "cannot open scenario file '" + source + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::vector<std::string> series_header(const AnyTrajectory& traj) {
    return std::visit(
        [](const auto& t) -> std::vector<std::string> {
            if (t.states.empty()) return {};
            return header_for(t.states.front());
        },
        traj);
}

void write_series(const KuramotoTrajectory& traj, SeriesFormat format, std::ostream& out) {
    write_impl(traj, format, out);
}

void write_series(const CSTrajectory& traj, SeriesFormat format, std::ostream& out) { write_impl(traj, format, out); }

void write_series(const AnyTrajectory& traj, SeriesFormat format, std::ostream& out) {
    std::visit([&](const auto& t) { write_impl(t, format, out); }, traj);
}

std::size_t SeriesTable::column(std::string_view name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == name) return c;
    throw Error(ErrorKind::ParseError, "no column named '" + std::string(name) + "'");
}

SeriesTable read_series_csv(std::istream& in) {
    SeriesTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string_view> cells;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            cells.push_back(trim(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (table.header.empty()) {
            for (auto c : cells) table.header.emplace_back(c);
            continue;
        }
        if (cells.size() != table.header.size()) throw parse_error(line_no, "row width differs from header");
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto c : cells) row.push_back(parse_double(c, line_no, "csv"));
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw parse_error(0, "empty csv");
    return table;
}

json to_json(const FrameworkVerdict& v) {
    auto cond = [](const Condition& c) {
        return json{{"name", c.name}, {"statement", c.statement}, {"pass", c.pass}, {"margin", num(c.margin)}};
    };
    json doc;
    doc["overall"] = v.overall;
    json conds = json::array();
    for (const auto& c : v.conditions) conds.push_back(cond(c));
    doc["conditions"] = std::move(conds);
    if (v.bounds) {
        doc["bounds"] = {{"upper", num(v.bounds->upper)}, {"lower", num(v.bounds->lower)}, {"e0", num(v.bounds->e0)}};
    } else {
        doc["bounds"] = nullptr;
    }
    doc["explicit_condition"] = v.explicit_condition ? cond(*v.explicit_condition) : json(nullptr);
    return doc;
}

json to_json(const FilippovResult& r) {
    json doc;
    doc["params"] = {{"gamma2", r.params.gamma2}, {"kappa2", r.params.kappa2}, {"dinf", r.params.dinf}};
    doc["regime"] = {{"name", std::string(regime_name(r.regime.regime))},
                     {"discriminant", r.regime.discriminant},
                     {"K", r.regime.k},
                     {"omega", r.regime.omega}};
    doc["decay_rate"] = decay_envelope(r.params);
    doc["verdict"] = std::string(verdict_name(r.verdict));
    doc["limit"] = r.verdict == Verdict::Converged ? json(r.limit) : json(nullptr);
    doc["hit_time"] = r.verdict == Verdict::OriginHit ? json(r.hit_time) : json(nullptr);
    doc["t_max"] = r.t_max;
    doc["collisions"] = r.collision_times.size();
    doc["collision_times"] = r.collision_times;
    doc["collision_velocities"] = r.collision_velocities;
    json segs = json::array();
    for (const auto& s : r.segments) {
        segs.push_back({{"t_start", num(s.t_start)},
                        {"t_end", num(s.t_end)},
                        {"branch", s.branch},
                        {"x0", s.x0},
                        {"v0", s.v0},
                        {"c1", s.solution.c1()},
                        {"c2", s.solution.c2()}});
    }
    doc["segments"] = std::move(segs);
    return doc;
}

json to_json(const DecayFit& f) {
    return {{"rate", f.rate}, {"intercept", f.intercept}, {"t_lo", f.t_lo},
            {"t_hi", f.t_hi}, {"rms", f.rms},             {"samples", f.used}};
}

json to_json(const Error& e) {
    json doc{{"error", std::string(e.name())}, {"message", e.what()}};
    if (e.pair) doc["pair"] = {e.pair->first, e.pair->second};
    if (e.time) doc["time"] = *e.time;
    if (e.line) doc["line"] = *e.line;
    return doc;
}

}  // namespace bondsim
