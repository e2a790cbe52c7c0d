#pragma once

// Binary, von Neumann, and relative entropy. Natural logarithm throughout;
// every entropy in this library is in nats.

#include <cmath>
#include <stdexcept>

#include "icotherm/matrix.hpp"

namespace icotherm {

namespace detail {
// Clipping window for eigenvalues that are negative only by rounding.
constexpr double kEigClip = 1e-12;

inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace detail

/// h(u) = -u ln u - (1-u) ln(1-u), with 0 ln 0 = 0. Arguments within 1e-12 of
/// the interval bounds are clipped; anything further out is rejected.
inline double binary_entropy(double u) {
    constexpr double slack = 1e-12;
    if (!(u >= -slack && u <= 1.0 + slack))
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return -detail::xlnx(u) - detail::xlnx(1.0 - u);
}

/// S(rho) = -tr(rho ln rho). Eigenvalues in [-1e-12, 0] are treated as 0;
/// harder negativity means the state is invalid and throws.
inline double von_neumann_entropy(const DensityOp& rho) {
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(rho.mat)) {
        if (lam < -detail::kEigClip)
            throw std::domain_error("von_neumann_entropy: negative eigenvalue " + std::to_string(lam));
        if (lam <= 0.0) continue;
        s -= detail::xlnx(lam);
    }
    return s;
}

/// Standard quantum relative entropy S(rho||sigma) = tr[rho(ln rho - ln sigma)].
/// Requires supp(rho) within supp(sigma); a sigma eigenvalue <= 1e-12 carrying
/// rho support is an error.
inline double relative_entropy(const DensityOp& rho, const DensityOp& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("relative_entropy: dimension mismatch");

    double tr_rho_ln_rho = 0.0;
    for (double lam : hermitian_eigenvalues(rho.mat)) {
        if (lam < -detail::kEigClip)
            throw std::domain_error("relative_entropy: rho has negative eigenvalue");
        if (lam > 0.0) tr_rho_ln_rho += detail::xlnx(lam);
    }

    const EigenSystem es = hermitian_eigensystem(sigma.mat);
    double tr_rho_ln_sigma = 0.0;
    for (int k = 0; k < sigma.dim(); ++k) {
        // overlap <v_k| rho |v_k>
        Cplx ov{};
        for (int i = 0; i < rho.dim(); ++i)
            for (int j = 0; j < rho.dim(); ++j)
                ov += std::conj(es.vectors.at(i, k)) * rho.mat.at(i, j) * es.vectors.at(j, k);
        const double weight = ov.real();
        if (es.values[k] <= detail::kEigClip) {
            if (weight > detail::kEigClip)
                throw std::domain_error(
                    "relative_entropy: sigma support does not contain rho support");
            continue;
        }
        tr_rho_ln_sigma += weight * std::log(es.values[k]);
    }
    return tr_rho_ln_rho - tr_rho_ln_sigma;
}

}  // namespace icotherm
