// icotherm command-line front end: single cycle runs, (a, theta) sweeps,
// paper-figure data regeneration, and the equation verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "icotherm/json_io.hpp"

namespace {

using namespace icotherm;

ControlKind parse_control(const std::string& s) {
    if (s == "definite") return ControlKind::Definite;
    if (s == "incoherent") return ControlKind::Incoherent;
    if (s == "coherent-plus") return ControlKind::CoherentPlus;
    if (s == "coherent-minus") return ControlKind::CoherentMinus;
    throw std::invalid_argument("unknown control kind: " + s);
}

DeviceKind parse_device(const std::string& s) {
    if (s == "definite") return DeviceKind::Definite;
    if (s == "engine-accelerator") return DeviceKind::EngineAccelerator;
    if (s == "refrigerator") return DeviceKind::Refrigerator;
    throw std::invalid_argument("unknown device kind: " + s);
}

AxisSpec parse_grid_token(const std::string& tok, const char* name) {
    AxisSpec ax;
    char colon1 = 0, colon2 = 0;
    std::istringstream is(tok);
    if (!(is >> ax.lo >> colon1 >> ax.hi >> colon2 >> ax.n) || colon1 != ':' || colon2 != ':' ||
        !is.eof())
        throw std::invalid_argument(std::string("--grid-") + name + " expects min:max:n");
    if (ax.n < 2) throw std::invalid_argument(std::string("--grid-") + name + " needs n >= 2");
    return ax;
}

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return j;
}

// Options shared by the cycle/sweep front ends. Flag presence is tracked by
// CLI11; absent flags fall back to the config file, then to the defaults.
struct CommonOpts {
    std::string config_path;
    double beta_eps = 1.39;
    double eps = 1.0;
    std::string control = "definite";
    std::string device;
    double a = 0.5;
    double b = 0.0;
    double theta = 0.0;
    double theta_deg = 0.0;
    std::string grid_a, grid_theta;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
    bool emit_plot_script = false;
};

void add_physics_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file; flags override file values");
    cmd->add_option("--beta-eps", o.beta_eps, "product beta*eps (dimensionless)");
    cmd->add_option("--eps", o.eps, "energy half-gap eps (sets the energy unit)");
    cmd->add_option("--control", o.control,
                    "order control: definite | incoherent | coherent-plus | coherent-minus")
        ->check(CLI::IsMember({"definite", "incoherent", "coherent-plus", "coherent-minus"}));
    cmd->add_option("--device", o.device,
                    "device family: definite | engine-accelerator | refrigerator")
        ->check(CLI::IsMember({"definite", "engine-accelerator", "refrigerator"}));
    cmd->add_option("--a", o.a, "measurement parameter a in [0,1]");
    cmd->add_option("--b", o.b, "measurement parameter b in [0,1] (definite control; default a)");
    auto* th = cmd->add_option("--theta", o.theta, "controller angle in radians, [0, pi]");
    cmd->add_option("--theta-deg", o.theta_deg, "controller angle in degrees, [0, 180]")
        ->excludes(th);
}

// value resolution order: explicit flag > config file > built-in default
template <typename T>
T resolve(const CLI::App* cmd, const char* flag, const nlohmann::json& cfg, const char* key,
          T flag_value, T fallback) {
    if (cmd->count(flag) > 0) return flag_value;
    if (cfg.contains(key) && !cfg[key].is_null() && !cfg[key].is_object())
        return cfg[key].get<T>();
    return fallback;
}

struct ResolvedScalars {
    ThermalSpec t{1.0, 1.0};
    ControlKind control = ControlKind::Definite;
    DeviceKind device = DeviceKind::EngineAccelerator;
    std::optional<double> b;
};

ResolvedScalars resolve_run(const CLI::App* cmd, const CommonOpts& o, const nlohmann::json& cfg) {
    ResolvedScalars r;
    const double beta_eps = resolve(cmd, "--beta-eps", cfg, "beta_eps", o.beta_eps, 1.39);
    const double eps = resolve(cmd, "--eps", cfg, "eps", o.eps, 1.0);
    r.t = ThermalSpec::from_beta_eps(beta_eps, eps);
    const std::string control =
        resolve<std::string>(cmd, "--control", cfg, "control", o.control, "definite");
    r.control = parse_control(control);
    std::string device_default =
        r.control == ControlKind::Definite ? "definite" : "engine-accelerator";
    const std::string device =
        resolve<std::string>(cmd, "--device", cfg, "device", o.device, device_default);
    r.device = parse_device(device);

    if (cmd->count("--b") > 0) {
        r.b = o.b;
    } else if (cfg.contains("b") && cfg["b"].is_number()) {
        r.b = cfg["b"].get<double>();
    }  // "same-as-a" or absent: leave empty

    if (r.device == DeviceKind::Definite && r.control != ControlKind::Definite)
        throw std::invalid_argument("device=definite requires control=definite");
    if (r.device == DeviceKind::Refrigerator && r.control == ControlKind::Incoherent)
        throw std::invalid_argument(
            "incoherent control has no refrigerator mode; use coherent-plus/minus");
    if (r.b && r.control != ControlKind::Definite)
        throw std::invalid_argument("--b applies to definite control only (the switch uses b = a)");
    return r;
}

double resolve_theta(const CLI::App* cmd, const CommonOpts& o, const nlohmann::json& cfg) {
    if (cmd->count("--theta-deg") > 0) return o.theta_deg * std::numbers::pi / 180.0;
    if (cmd->count("--theta") > 0) return o.theta;
    if (cfg.contains("theta") && cfg["theta"].is_number()) return cfg["theta"].get<double>();
    return 0.0;
}

AxisSpec resolve_axis(const CLI::App* cmd, const CommonOpts& o, const nlohmann::json& cfg,
                      bool is_theta) {
    const char* grid_flag = is_theta ? "--grid-theta" : "--grid-a";
    const std::string& grid_tok = is_theta ? o.grid_theta : o.grid_a;
    const char* key = is_theta ? "theta" : "a";
    if (cmd->count(grid_flag) > 0) return parse_grid_token(grid_tok, is_theta ? "theta" : "a");
    if (is_theta) {
        if (cmd->count("--theta") > 0 || cmd->count("--theta-deg") > 0)
            return AxisSpec{resolve_theta(cmd, o, cfg), 0.0, 1};
    } else if (cmd->count("--a") > 0) {
        return AxisSpec{o.a, 0.0, 1};
    }
    if (cfg.contains(key)) {
        const auto& v = cfg[key];
        if (v.is_number()) return AxisSpec{v.get<double>(), 0.0, 1};
        if (v.is_object())
            return AxisSpec{v.at("min").get<double>(), v.at("max").get<double>(),
                            v.at("n").get<int>()};
    }
    // default: full range for a, [0, pi] for theta
    return is_theta ? AxisSpec{0.0, std::numbers::pi, 201} : AxisSpec{0.0, 1.0, 201};
}

void fix_scalar_axis(AxisSpec& ax) {
    if (ax.n <= 1) ax.hi = ax.lo;
}

int write_rows(const std::vector<SweepRow>& rows, const std::string& out,
               const std::string& format, bool emit_plot_script) {
    std::string payload;
    if (format == "csv") {
        payload = csv_string(rows);
    } else if (format == "json") {
        payload = to_json(rows).dump(2) + "\n";
    } else {
        std::cerr << "error: unknown output format: " << format << "\n";
        return 2;
    }
    if (out.empty()) {
        if (emit_plot_script) {
            std::cerr << "error: --emit-plot-script requires --out\n";
            return 2;
        }
        std::cout << payload;
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << payload) || !f.flush()) {
        std::cerr << "error: cannot write output file: " << out << "\n";
        return 2;
    }
    if (emit_plot_script) {
        std::ofstream g(out + ".gp", std::ios::binary);
        if (!g || !(g << gnuplot_script(out))) {
            std::cerr << "error: cannot write plot script: " << out << ".gp\n";
            return 2;
        }
    }
    return 0;
}

int cmd_cycle(const CLI::App* cmd, const CommonOpts& o) {
    const nlohmann::json cfg = load_config(o.config_path);
    const ResolvedScalars r = resolve_run(cmd, o, cfg);
    const double a = resolve(cmd, "--a", cfg, "a", o.a, 0.5);
    const double theta = resolve_theta(cmd, o, cfg);
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument("theta must lie in [0, pi]");

    CycleReport rep;
    switch (r.control) {
        case ControlKind::Definite:
            rep = run_cycle_definite(r.t, a, r.b.value_or(a));
            break;
        case ControlKind::Incoherent:
            rep = run_incoherent_cycle(r.t, a, theta);
            break;
        default: {
            const Branch br =
                r.control == ControlKind::CoherentPlus ? Branch::Plus : Branch::Minus;
            rep = r.device == DeviceKind::Refrigerator
                      ? run_ico_cycle_refrigerator(r.t, a, theta, br)
                      : run_ico_cycle_engine(r.t, a, theta, br);
            break;
        }
    }
    nlohmann::json j = to_json(rep);
    j["per_eps"] = {{"q_hot", rep.q_hot / r.t.eps},
                    {"work", rep.work / r.t.eps},
                    {"q_cold", rep.q_cold / r.t.eps}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const CommonOpts& o) {
    const nlohmann::json cfg = load_config(o.config_path);
    const ResolvedScalars r = resolve_run(cmd, o, cfg);

    SweepConfig sweep;
    sweep.beta_eps = r.t.beta_eps;
    sweep.eps = r.t.eps;
    sweep.device = r.device == DeviceKind::Definite ? DeviceKind::EngineAccelerator : r.device;
    sweep.controls = {r.control};
    sweep.a = resolve_axis(cmd, o, cfg, false);
    sweep.theta = resolve_axis(cmd, o, cfg, true);
    fix_scalar_axis(sweep.a);
    fix_scalar_axis(sweep.theta);
    sweep.b = r.b;
    sweep.jobs = resolve(cmd, "--jobs", cfg, "jobs", o.jobs, 1);
    if (sweep.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");

    const std::string out = resolve<std::string>(cmd, "--out", cfg, "output_path", o.out, "");
    const std::string format =
        resolve<std::string>(cmd, "--format", cfg, "format", o.format, "csv");
    return write_rows(run_sweep(sweep), out, format, o.emit_plot_script);
}

int cmd_figure(const std::string& name, const std::string& out, int jobs,
               bool emit_plot_script) {
    SweepConfig cfg = figure_preset(name);
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    cfg.jobs = jobs;
    return write_rows(run_sweep(cfg), out, "csv", emit_plot_script);
}

int cmd_verify(std::uint64_t seed, int n_random, int grid_n, bool inject_defect) {
    ChannelSet channels = ChannelSet::standard();
    if (inject_defect) {
        // harness sensitivity fixture: meter A with its two Kraus
        // coefficients exchanged (still trace preserving, physically wrong)
        channels.meter_a = [](double a) {
            const double r0 = std::sqrt(a), r1 = std::sqrt(1.0 - a);
            return make_channel({r0 * basis_op(0, 0), r0 * basis_op(0, 1), r1 * basis_op(1, 1),
                                 (-r1) * basis_op(1, 0)},
                                "A");
        };
    }
    VerifyReport report = verify_equations(seed, n_random, grid_n, channels);
    for (double beta_eps : {0.45, 1.39})
        if (!verify_no_work_from_equilibrium(ThermalSpec::from_beta_eps(beta_eps)))
            report.pass = false;
    std::cout << to_json(report).dump(2) << "\n";
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "icotherm - qubit thermal devices powered by non-selective generalized\n"
        "measurements, with coherent/incoherent control of the causal order of\n"
        "two measurement channels. Figure presets use 201x201 grids."};
    app.require_subcommand(1);
    int rc = 0;

    CommonOpts cyc_opts;
    auto* cyc = app.add_subcommand("cycle", "Run one cycle and print its report as JSON");
    add_physics_flags(cyc, cyc_opts);
    cyc->callback([&]() { rc = cmd_cycle(cyc, cyc_opts); });

    CommonOpts sw_opts;
    auto* sw = app.add_subcommand("sweep", "Sweep (a, theta) and write CSV/JSON rows");
    add_physics_flags(sw, sw_opts);
    sw->add_option("--grid-a", sw_opts.grid_a, "a grid as min:max:n");
    sw->add_option("--grid-theta", sw_opts.grid_theta, "theta grid as min:max:n (radians)");
    sw->add_option("--out", sw_opts.out, "output path (default: stdout)");
    sw->add_option("--format", sw_opts.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--jobs", sw_opts.jobs, "worker threads (output is byte-identical for any value)");
    sw->add_flag("--emit-plot-script", sw_opts.emit_plot_script,
                 "also write a gnuplot script next to the CSV");
    sw->callback([&]() { rc = cmd_sweep(sw, sw_opts); });

    std::string fig_name, fig_out;
    int fig_jobs = 1;
    bool fig_plot = false;
    auto* fig = app.add_subcommand("figure", "Regenerate the data behind a paper figure");
    fig->add_option("name", fig_name, "one of: fig4 fig6 fig7 fig8 fig9")
        ->required()
        ->check(CLI::IsMember({"fig4", "fig6", "fig7", "fig8", "fig9"}));
    fig->add_option("--out", fig_out, "output path (default: stdout)");
    fig->add_option("--jobs", fig_jobs, "worker threads");
    fig->add_flag("--emit-plot-script", fig_plot, "also write a gnuplot script next to the CSV");
    fig->callback([&]() { rc = cmd_figure(fig_name, fig_out, fig_jobs, fig_plot); });

    std::uint64_t ver_seed = 42;
    int ver_n = 10000, ver_grid_n = 9;
    bool ver_defect = false;
    auto* ver = app.add_subcommand(
        "verify", "Cross-check every closed form against the brute-force simulation");
    ver->add_option("--seed", ver_seed, "SplitMix64 seed for the random parameter set");
    ver->add_option("--n", ver_n, "number of random (a, theta, beta*eps) triples")
        ->check(CLI::PositiveNumber);
    ver->add_option("--grid-n", ver_grid_n, "uniform refinement of the structured grid");
    ver->add_flag("--with-injected-defect", ver_defect,
                  "corrupt a Kraus coefficient to prove the harness fails loudly");
    ver->callback([&]() { rc = cmd_verify(ver_seed, ver_n, ver_grid_n, ver_defect); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
