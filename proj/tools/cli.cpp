#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "bondsim/filippov2.hpp"
#include "bondsim/framework.hpp"
#include "bondsim/integrator.hpp"
#include "bondsim/io.hpp"

namespace bondsim {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;
constexpr int kRuntime = 3;

void report(std::ostream& err, const Error& e) { err << e.what() << '\n'; }

SeriesFormat format_from(const std::string& name) { return name == "json" ? SeriesFormat::Json : SeriesFormat::Csv; }

struct RunOptions {
    std::string scenario;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::size_t> stride;
    std::optional<double> gap_floor;
    std::string format = "csv";
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--scenario", o.scenario, "scenario file or builtin:NAME")->required();
    cmd->add_option("--dt", o.dt, "step size override")->check(CLI::PositiveNumber);
    cmd->add_option("--t-end", o.t_end, "horizon override")->check(CLI::PositiveNumber);
    cmd->add_option("--stride", o.stride, "store every k-th step")->check(CLI::PositiveNumber);
    cmd->add_option("--gap-floor", o.gap_floor, "gap monitor threshold, <= 0 disables");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

Scenario prepare(const RunOptions& o) {
    Scenario s = load_scenario(o.scenario);
    if (o.dt) s.dt = *o.dt;
    if (o.t_end) s.t_end = *o.t_end;
    if (o.stride) s.stride = *o.stride;
    if (o.gap_floor) s.gap_floor = *o.gap_floor;
    validate_scenario(s);
    return s;
}

const std::optional<Error>& failure_of(const AnyTrajectory& traj) {
    return std::visit([](const auto& t) -> const std::optional<Error>& { return t.failure; }, traj);
}

bool has_samples(const AnyTrajectory& traj) {
    return std::visit([](const auto& t) { return !t.states.empty(); }, traj);
}

/// Writes the series; returns the run's failure, if any.
std::optional<Error> run_to_stream(const Scenario& s, SeriesFormat format, std::ostream& out) {
    const AnyTrajectory traj = simulate(s);
    if (has_samples(traj)) write_series(traj, format, out);
    return failure_of(traj);
}

int cmd_simulate(const RunOptions& o, const std::string& out_path, std::ostream& out, std::ostream& err) {
    Scenario s;
    try {
        s = prepare(o);
    } catch (const Error& e) {
        report(err, e);
        return kUsage;
    }
    try {
        std::optional<Error> failure;
        if (out_path.empty()) {
            failure = run_to_stream(s, format_from(o.format), out);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw Error(ErrorKind::SinkError, "cannot open '" + out_path + "' for writing");
            failure = run_to_stream(s, format_from(o.format), file);
        }
        if (failure) {
            report(err, *failure);
            return kRuntime;
        }
    } catch (const Error& e) {
        report(err, e);
        return kRuntime;
    }
    return kOk;
}

int cmd_check(const RunOptions& o, std::ostream& out, std::ostream& err) {
    Scenario s;
    try {
        s = prepare(o);
    } catch (const Error& e) {
        report(err, e);
        return kUsage;
    }
    try {
        if (s.model == ModelKind::KuramotoFirstOrder) {
            err << "the first-order model has no collision-avoidance framework\n";
            return kUsage;
        }
        const FrameworkVerdict v = check_scenario(s);
        nlohmann::json doc = to_json(v);
        doc["model"] = std::string(model_name(s.model));
        out << doc.dump(2) << '\n';
        return v.overall ? kOk : kCheckFailed;
    } catch (const Error& e) {
        report(err, e);
        return kRuntime;
    }
}

struct FilippovOptions {
    double x0 = 0.0, v0 = 0.0;
    double k0 = 0.0, k1 = 0.0, k2 = 1.0, dinf = 1.0;
    double t_max = 10.0;
    std::size_t samples = 1001;
    std::string out;
};

int cmd_filippov(const FilippovOptions& o, std::ostream& out, std::ostream& err) {
    FilippovResult r;
    try {
        r = solve_filippov(F2Params{o.k0 + o.k1, o.k2, o.dinf}, o.x0, o.v0, o.t_max);
    } catch (const Error& e) {
        report(err, e);
        return e.kind() == ErrorKind::RootFindFailure ? kRuntime : kUsage;
    }
    out << to_json(r).dump(2) << '\n';
    if (!o.out.empty()) {
        std::ofstream file(o.out, std::ios::binary);
        std::string buf = "t,x,v,E\n";
        for (const auto& smp : sample_filippov(r, o.samples)) {
            buf += format_number(smp.t) + ',' + format_number(smp.x) + ',' + format_number(smp.v) + ',' +
                   format_number(smp.energy) + '\n';
        }
        file << buf;
        if (!file) {
            report(err, Error(ErrorKind::SinkError, "cannot write '" + o.out + "'"));
            return kRuntime;
        }
    }
    if (r.verdict == Verdict::OriginHit) {
        report(err, Error(ErrorKind::OriginHitIllPosed,
                          "relative state reached the origin at t = " + format_number(r.hit_time)));
        return kRuntime;
    }
    return kOk;
}

struct SweepOptions {
    RunOptions run;
    std::string param;
    std::vector<double> values;
    std::string out_dir = ".";
    std::string prefix = "sweep";
    std::size_t jobs = 0;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    Scenario base;
    try {
        base = prepare(o.run);
    } catch (const Error& e) {
        report(err, e);
        return kUsage;
    }
    std::string key = o.param;
    if (key == "k0" || key == "κ0") key = "kappa0";
    if (key == "k1" || key == "κ1") key = "kappa1";
    if (key == "k2" || key == "κ2") key = "kappa2";

    const std::string ext = o.run.format == "json" ? ".json" : ".csv";
    const std::size_t count = o.values.size();
    std::vector<std::string> paths(count);
    std::vector<std::string> status(count);
    std::vector<int> codes(count, kOk);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < count; k = next++) {
            Scenario s = base;
            double& target = key == "kappa0" ? s.params.kappa0 : key == "kappa1" ? s.params.kappa1 : s.params.kappa2;
            target = o.values[k];
            paths[k] = (std::filesystem::path(o.out_dir) / (o.prefix + "_" + key + "_" + std::to_string(k) + ext)).string();
            try {
                validate_scenario(s);
                std::ofstream file(paths[k], std::ios::binary);
                if (!file) throw Error(ErrorKind::SinkError, "cannot open '" + paths[k] + "' for writing");
                const auto failure = run_to_stream(s, format_from(o.run.format), file);
                if (failure) {
                    status[k] = std::string(failure->name());
                    codes[k] = kRuntime;
                } else {
                    status[k] = "ok";
                }
            } catch (const Error& e) {
                status[k] = std::string(e.name());
                codes[k] = kRuntime;
            }
        }
    };

    std::size_t jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = kOk;
    out << key << ",file,status\n";
    for (std::size_t k = 0; k < count; ++k) {
        out << format_number(o.values[k]) << ',' << paths[k] << ',' << status[k] << '\n';
        if (codes[k] != kOk) {
            err << status[k] << ": run " << k << " (" << key << " = " << format_number(o.values[k]) << ") failed\n";
            code = kRuntime;
        }
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate bonded Kuramoto and Cucker-Smale ensembles", "bondsim"};
    app.require_subcommand(1);

    RunOptions sim;
    std::string sim_out;
    auto* simulate_cmd = app.add_subcommand("simulate", "integrate a scenario and write the time series");
    add_run_options(simulate_cmd, sim);
    simulate_cmd->add_option("--out", sim_out, "output file (default: standard output)");

    RunOptions chk;
    auto* check_cmd = app.add_subcommand("check", "evaluate the collision-avoidance sufficient conditions");
    add_run_options(check_cmd, chk);

    FilippovOptions fil;
    auto* fil_cmd = app.add_subcommand("filippov2", "exact two-particle solver with collisions");
    fil_cmd->add_option("--x0", fil.x0, "initial relative position")->required();
    fil_cmd->add_option("--v0", fil.v0, "initial relative velocity")->required();
    fil_cmd->add_option("--k0", fil.k0, "kappa0")->capture_default_str();
    fil_cmd->add_option("--k1", fil.k1, "kappa1")->capture_default_str();
    fil_cmd->add_option("--k2", fil.k2, "kappa2")->capture_default_str();
    fil_cmd->add_option("--dinf", fil.dinf, "target gap")->capture_default_str();
    fil_cmd->add_option("--t-max", fil.t_max, "horizon")->capture_default_str();
    fil_cmd->add_option("--samples", fil.samples, "CSV sample count")->capture_default_str()->check(CLI::PositiveNumber);
    fil_cmd->add_option("--out", fil.out, "sampled t,x,v,E CSV");

    SweepOptions swp;
    auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over one coupling strength");
    add_run_options(sweep_cmd, swp.run);
    sweep_cmd->add_option("--param", swp.param, "kappa0, kappa1 or kappa2")
        ->required()
        ->check(CLI::IsMember({"kappa0", "kappa1", "kappa2", "k0", "k1", "k2", "κ0", "κ1", "κ2"}));
    sweep_cmd->add_option("--values", swp.values, "values to run")->required()->delimiter(',');
    sweep_cmd->add_option("--out-dir", swp.out_dir, "directory for the per-run files")->capture_default_str();
    sweep_cmd->add_option("--prefix", swp.prefix, "file name prefix")->capture_default_str();
    sweep_cmd->add_option("--jobs", swp.jobs, "worker threads (default: hardware concurrency)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (*simulate_cmd) return cmd_simulate(sim, sim_out, out, err);
    if (*check_cmd) return cmd_check(chk, out, err);
    if (*fil_cmd) return cmd_filippov(fil, out, err);
    if (*sweep_cmd) return cmd_sweep(swp, out, err);
    return kUsage;
}

}  // namespace bondsim
