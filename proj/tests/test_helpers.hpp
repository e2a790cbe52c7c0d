#pragma once

#include "icotherm/matrix.hpp"
#include "icotherm/rng.hpp"

namespace icotest {

using icotherm::Cplx;
using icotherm::Mat;

inline Mat random_matrix(icotherm::SplitMix64& rng, int dim) {
    Mat m(dim);
    for (auto& x : m.e) x = Cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

inline Mat random_hermitian(icotherm::SplitMix64& rng, int dim) {
    const Mat m = random_matrix(rng, dim);
    return 0.5 * (m + icotherm::adjoint(m));
}

/// Random full-rank density matrix: normalized G G^dag plus a floor on the
/// spectrum via mixing with the maximally mixed state.
inline icotherm::DensityOp random_density(icotherm::SplitMix64& rng, int dim,
                                          double mix = 0.05) {
    const Mat g = random_matrix(rng, dim);
    Mat p = g * icotherm::adjoint(g);
    const double tr = icotherm::trace(p).real();
    p = (1.0 - mix) / tr * p + (mix / dim) * Mat::identity(dim);
    return icotherm::validate_density(p, 1e-9);
}

}  // namespace icotest
