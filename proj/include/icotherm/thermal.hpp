#pragma once

// Thermal environment and working-substance Hamiltonian: H = -eps * sigma_z,
// so the ground state |0> sits at energy -eps and the gap is 2*eps.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "icotherm/matrix.hpp"

namespace icotherm {

/// Inverse temperature and energy half-gap, with the derived quantities the
/// closed forms keep reusing.
struct ThermalSpec {
    double beta;
    double eps;
    double beta_eps;
    double tanh_be;
    double partition;  // Z = tr exp(-beta H) = 2 cosh(beta*eps)

    ThermalSpec(double beta_, double eps_) : beta(beta_), eps(eps_) {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("ThermalSpec: beta must be positive");
        if (!(eps > 0.0) || !std::isfinite(eps))
            throw std::invalid_argument("ThermalSpec: eps must be positive");
        beta_eps = beta * eps;
        tanh_be = std::tanh(beta_eps);
        partition = 2.0 * std::cosh(beta_eps);
    }

    static ThermalSpec from_beta_eps(double beta_eps, double eps = 1.0) {
        return ThermalSpec(beta_eps / eps, eps);
    }

    double ground_population() const { return 0.5 * (1.0 + tanh_be); }
    double excited_population() const { return 0.5 * (1.0 - tanh_be); }
};

struct HamiltonianOp {
    double eps;
    Mat mat;  // -eps * sigma_z
};

inline HamiltonianOp hamiltonian(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("hamiltonian: eps must be positive");
    return HamiltonianOp{eps, -eps * pauli_z()};
}

inline HamiltonianOp hamiltonian(const ThermalSpec& t) { return hamiltonian(t.eps); }

/// Gibbs state exp(-beta H)/Z = diag((1+tanh be)/2, (1-tanh be)/2).
inline DensityOp gibbs_state(const ThermalSpec& t) {
    return validate_density(diag2(t.ground_population(), t.excited_population()));
}

/// The two measurement strengths at which channel A leaves the Gibbs-state
/// entropy unchanged: a = (1 -+ tanh be)/2, returned as (low, high).
inline std::pair<double, double> isentropic_points_a(const ThermalSpec& t) {
    return {t.excited_population(), t.ground_population()};
}

inline double expectation_energy(const HamiltonianOp& h, const DensityOp& rho) {
    return trace(h.mat * rho.mat).real();
}

}  // namespace icotherm
