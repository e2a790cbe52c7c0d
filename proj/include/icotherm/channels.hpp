#pragma once

// The four generalized measurement channels of the cycle and the per-stroke
// energy/entropy bookkeeping.
//
// Channel A resets any input to diag(1-a, a); channel B (and its work-stroke
// variants C and D) exchanges the roles of |0> and |1>. All four are
// non-selective, so applying one is deterministic.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "icotherm/entropy.hpp"
#include "icotherm/matrix.hpp"
#include "icotherm/thermal.hpp"

namespace icotherm {

struct KrausChannel {
    int dim = 0;
    std::vector<Mat> ops;
    std::string label;
};

/// Max-norm of sum_j K_j^dag K_j - I.
inline double completeness_defect(const KrausChannel& ch) {
    Mat sum(ch.dim);
    for (const Mat& k : ch.ops) sum = sum + adjoint(k) * k;
    return max_abs_diff(sum, Mat::identity(ch.dim));
}

/// Builds a channel and enforces the completeness relation at 1e-12.
inline KrausChannel make_channel(std::vector<Mat> ops, std::string label) {
    if (ops.empty()) throw std::invalid_argument("make_channel: no Kraus operators");
    const int dim = ops.front().dim;
    for (const Mat& k : ops) {
        if (k.dim != dim) throw std::invalid_argument("make_channel: mixed operator dimensions");
        if (!all_finite(k)) throw std::domain_error("make_channel: non-finite Kraus entry");
    }
    KrausChannel ch{dim, std::move(ops), std::move(label)};
    const double defect = completeness_defect(ch);
    if (defect > 1e-12)
        throw std::domain_error("make_channel: completeness violated (defect " +
                                std::to_string(defect) + ") for channel " + ch.label);
    return ch;
}

namespace detail {
inline void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}
}  // namespace detail

/// M^a_1 = sqrt(1-a)|0><0|, M^a_2 = sqrt(1-a)|0><1|,
/// M^a_3 = sqrt(a)|1><1|,   M^a_4 = -sqrt(a)|1><0|.
inline KrausChannel kraus_meter_a(double a) {
    detail::require_unit_interval(a, "measurement parameter a");
    const double r0 = std::sqrt(1.0 - a), r1 = std::sqrt(a);
    return make_channel({r0 * basis_op(0, 0), r0 * basis_op(0, 1),
                         r1 * basis_op(1, 1), -r1 * basis_op(1, 0)},
                        "A");
}

/// Same family with |0> and |1> exchanged; resets any input to diag(b, 1-b).
inline KrausChannel kraus_meter_b(double b) {
    detail::require_unit_interval(b, "measurement parameter b");
    const double r0 = std::sqrt(1.0 - b), r1 = std::sqrt(b);
    return make_channel({r0 * basis_op(1, 1), r0 * basis_op(1, 0),
                         r1 * basis_op(0, 0), -r1 * basis_op(0, 1)},
                        "B");
}

/// Work channel of the ICO cycles; the B structure with parameter w.
inline KrausChannel kraus_work_c(double w) {
    detail::require_unit_interval(w, "measurement parameter w");
    KrausChannel ch = kraus_meter_b(w);
    ch.label = "C";
    return ch;
}

/// Work channel of the ICO refrigerator; the A structure with parameter d.
inline KrausChannel kraus_work_d(double d) {
    detail::require_unit_interval(d, "measurement parameter d");
    KrausChannel ch = kraus_meter_a(d);
    ch.label = "D";
    return ch;
}

/// rho -> sum_j K_j rho K_j^dag, revalidated as a state.
inline DensityOp apply_channel(const KrausChannel& ch, const DensityOp& rho) {
    if (ch.dim != rho.dim())
        throw std::invalid_argument("apply_channel: channel/state dimension mismatch");
    Mat out(ch.dim);
    for (const Mat& k : ch.ops) out = out + k * rho.mat * adjoint(k);
    return validate_density(out, rho.tol);
}

// --- stroke bookkeeping ------------------------------------------------------

enum class ExchangeKind { Work, Heat, None };

inline const char* to_string(ExchangeKind k) {
    switch (k) {
        case ExchangeKind::Work: return "Work";
        case ExchangeKind::Heat: return "Heat";
        default: return "None";
    }
}

/// One cycle stage: internal-energy change, entropy change, and whether the
/// exchange counts as work (isentropic) or heat.
struct StrokeRecord {
    std::string label;
    double delta_u = 0.0;
    double delta_s = 0.0;
    ExchangeKind exchange_kind = ExchangeKind::None;
};

// Classification thresholds: |dS| <= 1e-9 nats counts as isentropic (two
// orders above eigensolver noise, far below any physical dS on the paper's
// grids); |dU| <= 1e-12 counts as no exchange at all.
constexpr double kIsentropicTol = 1e-9;
constexpr double kNoExchangeTol = 1e-12;

inline StrokeRecord stroke_record(const HamiltonianOp& h, const DensityOp& before,
                                  const DensityOp& after, std::string label) {
    if (before.dim() != 2 || after.dim() != 2)
        throw std::invalid_argument("stroke_record: states must be 2x2");
    StrokeRecord r;
    r.label = std::move(label);
    r.delta_u = trace(h.mat * (after.mat - before.mat)).real();
    r.delta_s = von_neumann_entropy(after) - von_neumann_entropy(before);
    if (std::abs(r.delta_s) > kIsentropicTol)
        r.exchange_kind = ExchangeKind::Heat;
    else if (std::abs(r.delta_u) > kNoExchangeTol * std::max(1.0, h.eps))
        r.exchange_kind = ExchangeKind::Work;
    else
        r.exchange_kind = ExchangeKind::None;
    return r;
}

}  // namespace icotherm
