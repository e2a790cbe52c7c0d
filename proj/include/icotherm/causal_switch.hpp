#pragma once

// Quantum switch of the two measurement channels: the 16-operator controlled
// Kraus set K_ij = M^b_i M^a_j (x) |0><0| + M^a_j M^b_i (x) |1><1|, its
// incoherent reduction (traced controller), the post-selected branches
// (indefinite causal order), and the ICO cycle runners of the paper.
//
// The closed forms of Secs. III-IV assume b = a; the switch itself supports
// general (a, b) for simulation.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "icotherm/cycle.hpp"

namespace icotherm {

/// Order-controller qubit |c_theta> = cos(theta/2)|0> + sin(theta/2)|1>.
struct ControllerState {
    double theta;
    double ket[2];

    explicit ControllerState(double theta_) : theta(theta_) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi))
            throw std::invalid_argument("controller angle theta must lie in [0, pi]");
        ket[0] = std::cos(0.5 * theta);
        ket[1] = std::sin(0.5 * theta);
    }

    Mat projector() const {
        Mat m(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.at(i, j) = ket[i] * ket[j];
        return m;
    }
};

/// Projection basis |x_pm> = (|0> +- |1>)/sqrt(2) on the controller.
enum class Branch { Plus, Minus };

inline const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }
inline double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

enum class ControlKind { Definite, Incoherent, CoherentPlus, CoherentMinus };

inline const char* to_string(ControlKind c) {
    switch (c) {
        case ControlKind::Definite: return "definite";
        case ControlKind::Incoherent: return "incoherent";
        case ControlKind::CoherentPlus: return "coherent-plus";
        default: return "coherent-minus";
    }
}

inline ControlKind control_of(Branch b) {
    return b == Branch::Plus ? ControlKind::CoherentPlus : ControlKind::CoherentMinus;
}

/// Post-selection result: branch, its probability, and the conditioned 2x2
/// working-substance state rho^(pm).
struct SwitchOutcome {
    Branch branch;
    double probability;
    DensityOp state;
};

/// Regime function Omega (coherent Omega_pm or incoherent Omega_inc):
/// (0, 1/2) accelerator, (1/2, 1) engine, negative values refrigerator.
struct RegimeIndicator {
    double omega;
    ControlKind control_kind;
};

/// Builds the 16-operator switch from already-constructed meter channels, so
/// alternative (e.g. deliberately corrupted test) channels propagate into it.
inline KrausChannel switch_kraus_from(const KrausChannel& ma, const KrausChannel& mb) {
    if (ma.dim != 2 || mb.dim != 2)
        throw std::invalid_argument("switch_kraus_from: meter channels must be 2x2");
    const Mat c0 = basis_op(0, 0), c1 = basis_op(1, 1);
    std::vector<Mat> ops;
    ops.reserve(ma.ops.size() * mb.ops.size());
    for (const Mat& mi : mb.ops)
        for (const Mat& mj : ma.ops) ops.push_back(kron(mi * mj, c0) + kron(mj * mi, c1));
    return make_channel(std::move(ops), "SWITCH");
}

inline KrausChannel switch_kraus(double a, double b) {
    return switch_kraus_from(kraus_meter_a(a), kraus_meter_b(b));
}

/// rho^sw = sum_ij K_ij (rho1 (x) |c_theta><c_theta|) K_ij^dag.
inline DensityOp apply_switch(const DensityOp& rho1, const ControllerState& c, double a, double b) {
    if (rho1.dim() != 2) throw std::invalid_argument("apply_switch: system state must be 2x2");
    const DensityOp joint = validate_density(kron(rho1.mat, c.projector()), rho1.tol);
    return apply_channel(switch_kraus(a, b), joint);
}

/// Incoherent mixture of the two causal orders: trace out the controller.
inline DensityOp reduce_incoherent(const DensityOp& rho_sw) {
    return validate_density(partial_trace_controller(rho_sw.mat), rho_sw.tol);
}

/// Projects the controller of rho^sw onto |x_pm> and returns the branch
/// probability together with the normalized conditional system state.
inline SwitchOutcome postselect_branch(const DensityOp& rho_sw, Branch branch) {
    if (rho_sw.dim() != 4) throw std::invalid_argument("postselect_branch: state must be 4x4");
    const double sgn = branch_sign(branch);
    const double x[2] = {1.0 / std::sqrt(2.0), sgn / std::sqrt(2.0)};
    Mat block(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Cplx v{};
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    v += x[k] * rho_sw.mat.at(2 * i + k, 2 * j + l) * x[l];
            block.at(i, j) = v;
        }
    const double p = trace(block).real();
    if (p <= 1e-12)
        throw std::domain_error("postselect_branch: branch probability vanishes");
    return SwitchOutcome{branch, p, validate_density((1.0 / p) * block, rho_sw.tol)};
}

/// p_pm = [1 +- a(1-a) sin(theta)]/2 (valid for b = a).
inline double branch_probability_closed(double a, double theta, Branch branch) {
    detail::require_unit_interval(a, "measurement parameter a");
    return 0.5 * (1.0 + branch_sign(branch) * a * (1.0 - a) * std::sin(theta));
}

/// Omega_pm = (1/(4 p_pm)) (1 + (1-2a) cos(theta)/tanh(be)).
inline RegimeIndicator omega_coherent(double a, double theta, const ThermalSpec& t, Branch branch) {
    const double p = branch_probability_closed(a, theta, branch);
    const double omega = (1.0 + (1.0 - 2.0 * a) * std::cos(theta) / t.tanh_be) / (4.0 * p);
    return RegimeIndicator{omega, control_of(branch)};
}

/// Omega_inc = (1/2) (1 + (1-2a) cos(theta)/tanh(be)).
inline RegimeIndicator omega_incoherent(double a, double theta, const ThermalSpec& t) {
    const double omega = 0.5 * (1.0 + (1.0 - 2.0 * a) * std::cos(theta) / t.tanh_be);
    return RegimeIndicator{omega, ControlKind::Incoherent};
}

namespace detail {
// The w parameters are populations, hence confined to [0,1]; anything beyond
// rounding slack signals broken algebra upstream.
inline double confine_unit(double w, const char* what) {
    if (!(w >= -1e-12 && w <= 1.0 + 1e-12))
        throw std::logic_error(std::string(what) + " left [0,1]: " + std::to_string(w));
    return std::min(1.0, std::max(0.0, w));
}
}  // namespace detail

/// Work-channel parameter making channel C isentropic on rho^(pm): the
/// excited-state population of rho^(pm).
inline double w_isentropic_coherent(double a, double theta, const ThermalSpec& t, Branch branch) {
    const double p = branch_probability_closed(a, theta, branch);
    const double q = 0.5 / p;
    const double w = q * (0.5 - (a - 0.5) * std::cos(theta)) + (1.0 - q) * t.excited_population();
    return detail::confine_unit(w, "w_pm");
}

/// Incoherent-control counterpart: the excited population of rho^sw_inc.
inline double w_isentropic_incoherent(double a, double theta) {
    return detail::confine_unit(0.5 - (a - 0.5) * std::cos(theta), "w_inc");
}

namespace detail {

// The boundaries Omega in {0, 1/2, 1} are isentropic/no-op points, not
// operating modes; the same 1e-12 equality tolerance as the definite-order
// parameter intervals applies.
inline Mode mode_from_omega(double omega) {
    if (!(omega > kModeEqTol) || !(omega < 1.0 - kModeEqTol) ||
        std::abs(omega - 0.5) <= kModeEqTol)
        return Mode::OutOfRegime;
    return omega > 0.5 ? Mode::Engine : Mode::Accelerator;
}

}  // namespace detail

/// Engine/accelerator ICO cycle (Fig. 5(a)): thermalization, quantum switch
/// with post-selection on `branch`, isentropic work channel C.
inline CycleReport run_ico_cycle_engine(const ThermalSpec& t, double a, double theta,
                                        Branch branch) {
    detail::require_unit_interval(a, "measurement parameter a");
    const ControllerState c(theta);
    const HamiltonianOp h = hamiltonian(t);
    const DensityOp rho1 = gibbs_state(t);

    const DensityOp rho_sw = apply_switch(rho1, c, a, a);
    const SwitchOutcome out = postselect_branch(rho_sw, branch);
    const double p = branch_probability_closed(a, theta, branch);
    if (std::abs(out.probability - p) > 1e-12)
        throw std::logic_error("run_ico_cycle_engine: p_pm closed form mismatch");

    const double w = w_isentropic_coherent(a, theta, t, branch);
    const DensityOp rho_c = apply_channel(kraus_work_c(w), out.state);

    CycleReport rep;
    rep.strokes = {stroke_record(h, rho1, out.state, "switch-postselect"),
                   stroke_record(h, out.state, rho_c, "work-c"),
                   stroke_record(h, rho_c, rho1, "thermalization")};
    rep.q_hot = rep.strokes[0].delta_u;
    rep.work = rep.strokes[1].delta_u;
    rep.q_cold = rep.strokes[2].delta_u;
    rep.first_law_residual = rep.q_hot + rep.work + rep.q_cold;

    const double eps = t.eps, tb = t.tanh_be, ct = std::cos(theta);
    detail::check_closed_form(rep.q_hot, eps / (2.0 * p) * ((1.0 - 2.0 * a) * ct + tb), eps,
                              "Q_hot^(pm)");
    detail::check_closed_form(rep.work, eps / p * ((2.0 * a - 1.0) * ct + (2.0 * p - 1.0) * tb),
                              eps, "W^(pm)");
    detail::check_closed_form(rep.q_cold,
                              -eps / (2.0 * p) * ((2.0 * a - 1.0) * ct - (1.0 - 4.0 * p) * tb),
                              eps, "Q_cold^(pm)");

    const RegimeIndicator omega = omega_coherent(a, theta, t, branch);
    rep.omega = omega.omega;
    rep.branch_probability = out.probability;
    rep.expected_repeats = 1.0 / out.probability;
    rep.mode = detail::mode_from_omega(omega.omega);
    if (rep.mode == Mode::Engine) {
        rep.merit = -rep.work / rep.q_hot;
        detail::check_merit_closed_form(2.0 - 1.0 / omega.omega, rep.q_hot, -rep.work, eps,
                                        "eta^(pm)");
    } else if (rep.mode == Mode::Accelerator) {
        rep.merit = -rep.q_cold / rep.work;
        const double cop = 1.0 - 1.0 / (2.0 - 1.0 / omega.omega);
        detail::check_merit_closed_form(cop, rep.work, -rep.q_cold, eps, "COP_acc^(pm)");
    }
    return rep;
}

/// Refrigerator ICO cycle (Fig. 5(b)): thermalization, isentropic work
/// channel D at d = (1+tanh be)/2, then the post-selected switch.
inline CycleReport run_ico_cycle_refrigerator(const ThermalSpec& t, double a, double theta,
                                              Branch branch) {
    detail::require_unit_interval(a, "measurement parameter a");
    const ControllerState c(theta);
    const HamiltonianOp h = hamiltonian(t);
    const DensityOp rho1 = gibbs_state(t);

    const double d = t.ground_population();
    const DensityOp rho_d = apply_channel(kraus_work_d(d), rho1);
    const DensityOp rho_sw = apply_switch(rho_d, c, a, a);
    const SwitchOutcome out = postselect_branch(rho_sw, branch);
    const double p = branch_probability_closed(a, theta, branch);
    if (std::abs(out.probability - p) > 1e-12)
        throw std::logic_error("run_ico_cycle_refrigerator: p_pm closed form mismatch");

    CycleReport rep;
    rep.strokes = {stroke_record(h, rho1, rho_d, "work-d"),
                   stroke_record(h, rho_d, out.state, "switch-postselect"),
                   stroke_record(h, out.state, rho1, "thermalization")};
    rep.work = rep.strokes[0].delta_u;
    rep.q_hot = rep.strokes[1].delta_u;
    rep.q_cold = rep.strokes[2].delta_u;
    rep.first_law_residual = rep.work + rep.q_hot + rep.q_cold;

    const double eps = t.eps, tb = t.tanh_be, ct = std::cos(theta);
    detail::check_closed_form(rep.work, 2.0 * eps * tb, eps, "W_inv");
    detail::check_closed_form(rep.q_hot, -eps / (2.0 * p) * ((2.0 * a - 1.0) * ct + tb), eps,
                              "Q_hot^(pm) (refrigerator)");
    detail::check_closed_form(rep.q_cold,
                              eps / (2.0 * p) * ((2.0 * a - 1.0) * ct + (1.0 - 4.0 * p) * tb), eps,
                              "Q_cold^(pm) (refrigerator)");

    const RegimeIndicator omega = omega_coherent(a, theta, t, branch);
    rep.omega = omega.omega;
    rep.branch_probability = out.probability;
    rep.expected_repeats = 1.0 / out.probability;
    // Refrigeration needs heat actually drawn from the cold bath. Omega < 0
    // alone does not guarantee that on the plus branch: for p > 1/2 there is
    // a sliver with weakly negative Omega where COP = 1/(2p) - (Omega+1) < 0
    // and the cycle dumps heat on both sides; those points stay out of
    // regime, matching the gray exclusions of the COP surfaces.
    const double cop = 0.5 / p - (omega.omega + 1.0);
    if (omega.omega < -kModeEqTol && cop > kModeEqTol) {
        rep.mode = Mode::Refrigerator;
        rep.merit = rep.q_cold / rep.work;
        detail::check_merit_closed_form(cop, rep.work, rep.q_cold, eps, "COP_ref^(pm)");
    } else {
        rep.mode = Mode::OutOfRegime;
    }
    return rep;
}

/// Incoherent-control cycle (Sec. IV.B): switch with traced-out controller,
/// then the isentropic work channel C. Deterministic, so no branch
/// probability and no expected repeat count.
inline CycleReport run_incoherent_cycle(const ThermalSpec& t, double a, double theta) {
    detail::require_unit_interval(a, "measurement parameter a");
    const ControllerState c(theta);
    const HamiltonianOp h = hamiltonian(t);
    const DensityOp rho1 = gibbs_state(t);

    const DensityOp rho_inc = reduce_incoherent(apply_switch(rho1, c, a, a));
    // rho^sw_inc closed form: I/2 + (a-1/2) cos(theta) sigma_z
    const Mat inc_closed = 0.5 * Mat::identity(2) + ((a - 0.5) * std::cos(theta)) * pauli_z();
    if (max_abs_diff(rho_inc.mat, inc_closed) > 1e-12)
        throw std::logic_error("run_incoherent_cycle: rho^sw_inc closed form mismatch");

    const double w = w_isentropic_incoherent(a, theta);
    const DensityOp rho_c = apply_channel(kraus_work_c(w), rho_inc);

    CycleReport rep;
    rep.strokes = {stroke_record(h, rho1, rho_inc, "switch-incoherent"),
                   stroke_record(h, rho_inc, rho_c, "work-c"),
                   stroke_record(h, rho_c, rho1, "thermalization")};
    rep.q_hot = rep.strokes[0].delta_u;
    rep.work = rep.strokes[1].delta_u;
    rep.q_cold = rep.strokes[2].delta_u;
    rep.first_law_residual = rep.q_hot + rep.work + rep.q_cold;

    const double eps = t.eps, tb = t.tanh_be, ct = std::cos(theta);
    detail::check_closed_form(rep.q_hot, eps * ((1.0 - 2.0 * a) * ct + tb), eps, "Q_hot^inc");
    detail::check_closed_form(rep.work, 2.0 * eps * (2.0 * a - 1.0) * ct, eps, "W^inc");
    detail::check_closed_form(rep.q_cold, -eps * ((2.0 * a - 1.0) * ct + tb), eps, "Q_cold^inc");

    const RegimeIndicator omega = omega_incoherent(a, theta, t);
    rep.omega = omega.omega;
    rep.mode = detail::mode_from_omega(omega.omega);
    if (rep.mode == Mode::Engine) {
        rep.merit = -rep.work / rep.q_hot;
        detail::check_merit_closed_form(2.0 - 1.0 / omega.omega, rep.q_hot, -rep.work, eps,
                                        "eta^inc");
    } else if (rep.mode == Mode::Accelerator) {
        rep.merit = -rep.q_cold / rep.work;
        const double cop = 1.0 - 1.0 / (2.0 - 1.0 / omega.omega);
        detail::check_merit_closed_form(cop, rep.work, -rep.q_cold, eps, "COP_acc^inc");
    }
    return rep;
}

/// Coherent-vs-incoherent comparison at one parameter point. Work-extraction
/// advantage holds iff Omega_pm > Omega_inc, equivalently p_pm < 1/2. The
/// engine-side efficiencies are reported on the closed interval
/// Omega in [1/2, 1) so a device pinned at the zero-efficiency boundary
/// reports eta = 0 rather than nothing; accelerator-side COPs on (0, 1/2).
struct AdvantageReport {
    bool advantaged = false;
    double p = 0.0;
    double omega_coherent = 0.0;
    double omega_incoherent = 0.0;
    std::optional<double> eta_coherent;
    std::optional<double> eta_incoherent;
    std::optional<double> cop_acc_coherent;
    std::optional<double> cop_acc_incoherent;
};

inline AdvantageReport coherent_advantage(const ThermalSpec& t, double a, double theta,
                                          Branch branch) {
    AdvantageReport rep;
    rep.p = branch_probability_closed(a, theta, branch);
    rep.omega_coherent = omega_coherent(a, theta, t, branch).omega;
    rep.omega_incoherent = omega_incoherent(a, theta, t).omega;
    rep.advantaged = rep.omega_coherent > rep.omega_incoherent;

    // Omega_pm - Omega_inc = (1/(4p) - 1/2)(1 + x); the p_pm < 1/2 criterion
    // presumes 1 + x > 0, which holds whenever the incoherent device is not
    // fully out of regime (Omega_inc > 0).
    if (std::abs(rep.p - 0.5) > 1e-12 && rep.omega_incoherent > 0.0) {
        if (rep.advantaged != (rep.p < 0.5))
            throw std::logic_error("coherent_advantage: p_pm criterion mismatch");
    }

    auto eta_of = [](double om) -> std::optional<double> {
        if (om >= 0.5 && om < 1.0) return 2.0 - 1.0 / om;
        return std::nullopt;
    };
    auto cop_of = [](double om) -> std::optional<double> {
        if (om > 0.0 && om < 0.5) return 1.0 - 1.0 / (2.0 - 1.0 / om);
        return std::nullopt;
    };
    rep.eta_coherent = eta_of(rep.omega_coherent);
    rep.eta_incoherent = eta_of(rep.omega_incoherent);
    rep.cop_acc_coherent = cop_of(rep.omega_coherent);
    rep.cop_acc_incoherent = cop_of(rep.omega_incoherent);
    return rep;
}

}  // namespace icotherm
