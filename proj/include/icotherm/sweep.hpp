#pragma once

// Parameter sweeps over (a, theta) for every control kind, evaluated by a
// worker pool but aggregated in fixed grid order, so the CSV bytes never
// depend on the job count. Numbers are rendered as the shortest decimal that
// round-trips the exact 64-bit value.

#include <atomic>
#include <charconv>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "icotherm/causal_switch.hpp"

namespace icotherm {

/// One sweep axis; n == 1 means a scalar pinned at `lo`.
struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;
};

inline double axis_point(const AxisSpec& ax, int i) {
    if (ax.n <= 1) return ax.lo;
    return ax.lo + (ax.hi - ax.lo) * (static_cast<double>(i) / (ax.n - 1));
}

enum class DeviceKind { Definite, EngineAccelerator, Refrigerator };

inline const char* to_string(DeviceKind d) {
    switch (d) {
        case DeviceKind::Definite: return "definite";
        case DeviceKind::EngineAccelerator: return "engine-accelerator";
        default: return "refrigerator";
    }
}

struct SweepConfig {
    double beta_eps = 1.39;
    double eps = 1.0;
    DeviceKind device = DeviceKind::EngineAccelerator;
    std::vector<ControlKind> controls = {ControlKind::CoherentMinus};
    AxisSpec a{0.0, 1.0, 201};
    AxisSpec theta{0.0, std::numbers::pi, 201};
    std::optional<double> b;  // definite control only; empty = same-as-a
    int jobs = 1;
};

/// Fixed column order: a, theta, beta_eps, branch, p, omega, q_hot, work,
/// q_cold, merit, mode. Absent values print as empty fields.
struct SweepRow {
    double a = 0.0;
    double theta = 0.0;
    double beta_eps = 0.0;
    std::string branch;
    std::optional<double> p;
    std::optional<double> omega;
    double q_hot = 0.0;
    double work = 0.0;
    double q_cold = 0.0;
    std::optional<double> merit;
    Mode mode = Mode::OutOfRegime;
};

inline constexpr const char* kSweepCsvHeader =
    "a,theta,beta_eps,branch,p,omega,q_hot,work,q_cold,merit,mode";

namespace detail {

inline void validate_axis(const AxisSpec& ax, double lo_bound, double hi_bound,
                          const char* name) {
    if (ax.n < 1 || (ax.lo != ax.hi && ax.n < 2))
        throw std::invalid_argument(std::string("grid for ") + name +
                                    " needs n >= 2 when a range is given");
    if (!(ax.lo >= lo_bound && ax.hi <= hi_bound && ax.lo <= ax.hi))
        throw std::invalid_argument(std::string("grid for ") + name + " out of range");
}

inline SweepRow evaluate_sweep_row(const SweepConfig& cfg, const ThermalSpec& t, double a,
                                   double theta, ControlKind control) {
    SweepRow row;
    row.a = a;
    row.theta = theta;
    row.beta_eps = cfg.beta_eps;
    CycleReport rep;
    switch (control) {
        case ControlKind::Definite:
            rep = run_cycle_definite(t, a, cfg.b.value_or(a));
            row.branch = "def";
            break;
        case ControlKind::Incoherent:
            rep = run_incoherent_cycle(t, a, theta);
            row.branch = "inc";
            break;
        default: {
            const Branch br =
                control == ControlKind::CoherentPlus ? Branch::Plus : Branch::Minus;
            rep = cfg.device == DeviceKind::Refrigerator
                      ? run_ico_cycle_refrigerator(t, a, theta, br)
                      : run_ico_cycle_engine(t, a, theta, br);
            row.branch = to_string(br);
            break;
        }
    }
    row.p = rep.branch_probability;
    row.omega = rep.omega;
    row.q_hot = rep.q_hot;
    row.work = rep.work;
    row.q_cold = rep.q_cold;
    row.merit = rep.merit;
    row.mode = rep.mode;
    return row;
}

}  // namespace detail

/// Evaluates the full grid in row-major a-outer/theta-inner order with the
/// configured control kinds innermost. With jobs > 1 the points are computed
/// concurrently into their preassigned slots.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    detail::validate_axis(cfg.a, 0.0, 1.0, "a");
    detail::validate_axis(cfg.theta, 0.0, std::numbers::pi, "theta");
    if (cfg.controls.empty()) throw std::invalid_argument("sweep needs at least one control kind");
    if (cfg.b && !(*cfg.b >= 0.0 && *cfg.b <= 1.0))
        throw std::invalid_argument("measurement parameter b must lie in [0,1]");

    const ThermalSpec t = ThermalSpec::from_beta_eps(cfg.beta_eps, cfg.eps);
    const long n_controls = static_cast<long>(cfg.controls.size());
    const long total = static_cast<long>(cfg.a.n) * cfg.theta.n * n_controls;
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));

    auto compute = [&](long idx) {
        const long ic = idx % n_controls;
        const long itheta = (idx / n_controls) % cfg.theta.n;
        const long ia = idx / (n_controls * cfg.theta.n);
        rows[static_cast<std::size_t>(idx)] = detail::evaluate_sweep_row(
            cfg, t, axis_point(cfg.a, static_cast<int>(ia)),
            axis_point(cfg.theta, static_cast<int>(itheta)), cfg.controls[ic]);
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || total < 2) {
        for (long i = 0; i < total; ++i) compute(i);
    } else {
        std::atomic<long> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            try {
                for (long i = next.fetch_add(1); i < total; i = next.fetch_add(1)) compute(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(total);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return rows;
}

/// Shortest decimal rendering that parses back to the exact double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    os << kSweepCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        os << format_double(r.a) << ',' << format_double(r.theta) << ','
           << format_double(r.beta_eps) << ',' << r.branch << ',' << opt(r.p) << ','
           << opt(r.omega) << ',' << format_double(r.q_hot) << ',' << format_double(r.work)
           << ',' << format_double(r.q_cold) << ',' << opt(r.merit) << ',' << to_string(r.mode)
           << '\n';
    }
}

inline std::string csv_string(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

/// Presets regenerating the data behind the paper's surface plots.
///   fig4: p_- over (a, theta)                      [beta*eps = 1.39]
///   fig6: heat and work, both coherent branches    [beta*eps = 1.39]
///   fig7: same sweep; merit column carries eta/COP [beta*eps = 1.39]
///   fig8: refrigerator COP, both branches          [beta*eps = 0.45]
///   fig9: incoherent control                       [beta*eps = 1.39]
inline SweepConfig figure_preset(const std::string& name) {
    SweepConfig cfg;
    cfg.a = AxisSpec{0.0, 1.0, 201};
    cfg.theta = AxisSpec{0.0, std::numbers::pi, 201};
    if (name == "fig4") {
        cfg.beta_eps = 1.39;
        cfg.device = DeviceKind::EngineAccelerator;
        cfg.controls = {ControlKind::CoherentMinus};
    } else if (name == "fig6" || name == "fig7") {
        cfg.beta_eps = 1.39;
        cfg.device = DeviceKind::EngineAccelerator;
        cfg.controls = {ControlKind::CoherentPlus, ControlKind::CoherentMinus};
    } else if (name == "fig8") {
        cfg.beta_eps = 0.45;
        cfg.device = DeviceKind::Refrigerator;
        cfg.controls = {ControlKind::CoherentPlus, ControlKind::CoherentMinus};
    } else if (name == "fig9") {
        cfg.beta_eps = 1.39;
        cfg.device = DeviceKind::EngineAccelerator;
        cfg.controls = {ControlKind::Incoherent};
    } else {
        throw std::invalid_argument("unknown figure preset: " + name);
    }
    return cfg;
}

/// Companion gnuplot script plotting the merit surface of a sweep CSV.
inline std::string gnuplot_script(const std::string& csv_path) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set datafile missing ''\n"
       << "set xlabel 'a'\n"
       << "set ylabel 'theta'\n"
       << "set pm3d map\n"
       << "splot '" << csv_path << "' every ::1 using 1:2:10 with pm3d title 'merit'\n";
    return os.str();
}

}  // namespace icotherm
