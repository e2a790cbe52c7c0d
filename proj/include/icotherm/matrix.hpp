#pragma once

// Dense complex matrix kernel for 2x2 and 4x4 operators: adjoint, product,
// Kronecker product, partial trace over the controller, and a cyclic Jacobi
// eigensolver for Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace icotherm {

using Cplx = std::complex<double>;

/// Row-major dense complex matrix. Dimensions are fixed at runtime; in this
/// library they are always 2 (system) or 4 (system x controller).
struct Mat {
    int dim = 0;
    std::vector<Cplx> e;

    Mat() = default;
    explicit Mat(int d) : dim(d), e(static_cast<std::size_t>(d) * d) {
        if (d <= 0) throw std::invalid_argument("matrix dimension must be positive");
    }

    Cplx& at(int i, int j) { return e[static_cast<std::size_t>(i) * dim + j]; }
    const Cplx& at(int i, int j) const { return e[static_cast<std::size_t>(i) * dim + j]; }

    static Mat zero(int d) { return Mat(d); }

    static Mat identity(int d) {
        Mat m(d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline Mat operator+(const Mat& a, const Mat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch in +");
    Mat r(a.dim);
    for (std::size_t k = 0; k < r.e.size(); ++k) r.e[k] = a.e[k] + b.e[k];
    return r;
}

inline Mat operator-(const Mat& a, const Mat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch in -");
    Mat r(a.dim);
    for (std::size_t k = 0; k < r.e.size(); ++k) r.e[k] = a.e[k] - b.e[k];
    return r;
}

inline Mat operator*(Cplx s, const Mat& a) {
    Mat r(a.dim);
    for (std::size_t k = 0; k < r.e.size(); ++k) r.e[k] = s * a.e[k];
    return r;
}

inline Mat operator*(double s, const Mat& a) { return Cplx(s, 0.0) * a; }

/// Conjugate transpose.
inline Mat adjoint(const Mat& m) {
    Mat r(m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch in matmul");
    Mat r(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const Cplx aik = a.at(i, k);
            if (aik == Cplx{}) continue;
            for (int j = 0; j < a.dim; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

inline Mat operator*(const Mat& a, const Mat& b) { return matmul(a, b); }

/// Kronecker product with `a` as the slow (system) factor and `b` as the fast
/// (controller) factor.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            const Cplx aij = a.at(i, j);
            for (int k = 0; k < b.dim; ++k)
                for (int l = 0; l < b.dim; ++l)
                    r.at(i * b.dim + k, j * b.dim + l) = aij * b.at(k, l);
        }
    return r;
}

inline Cplx trace(const Mat& m) {
    Cplx t{};
    for (int i = 0; i < m.dim; ++i) t += m.at(i, i);
    return t;
}

/// Largest entrywise modulus; used as the matrix max-norm throughout.
inline double max_abs(const Mat& m) {
    double v = 0.0;
    for (const Cplx& x : m.e) v = std::max(v, std::abs(x));
    return v;
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return max_abs(a - b); }

inline double hermiticity_defect(const Mat& m) { return max_abs_diff(m, adjoint(m)); }

inline bool all_finite(const Mat& m) {
    for (const Cplx& x : m.e)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

/// Trace over the controller (fast) factor of a 4x4 system(x)controller
/// operator, in the layout produced by kron.
inline Mat partial_trace_controller(const Mat& m) {
    if (m.dim != 4) throw std::invalid_argument("partial_trace_controller expects a 4x4 matrix");
    Mat r(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.at(i, j) = m.at(2 * i, 2 * j) + m.at(2 * i + 1, 2 * j + 1);
    return r;
}

// --- fixed operators -------------------------------------------------------

inline Mat pauli_z() {
    Mat m(2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

inline Mat pauli_x() {
    Mat m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

/// |i><j| on the qubit.
inline Mat basis_op(int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("basis_op index out of range");
    Mat m(2);
    m.at(i, j) = 1.0;
    return m;
}

inline Mat diag2(double p0, double p1) {
    Mat m(2);
    m.at(0, 0) = p0;
    m.at(1, 1) = p1;
    return m;
}

// --- Hermitian eigensolver --------------------------------------------------

struct EigenSystem {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Each pivot is killed
/// by the unitary built from the phase of the pivot entry and the classic
/// real rotation; converges when the largest off-diagonal modulus is <= 1e-14,
/// and gives up (throws) after 100 sweeps.
inline EigenSystem hermitian_eigensystem(const Mat& m) {
    constexpr double kHermTol = 1e-10;
    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 100;

    if (hermiticity_defect(m) > kHermTol)
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian within 1e-10");

    const int n = m.dim;
    Mat a = 0.5 * (m + adjoint(m));
    Mat v = Mat::identity(n);

    auto max_off = [&]() {
        double w = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) w = std::max(w, std::abs(a.at(p, q)));
        return w;
    };

    int sweep = 0;
    while (max_off() > kOffTol) {
        if (++sweep > kMaxSweeps)
            throw std::runtime_error("hermitian_eigensystem: Jacobi failed to converge in 100 sweeps");
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Cplx apq = a.at(p, q);
                const double g = std::abs(apq);
                if (g <= kOffTol * 1e-2) continue;
                const Cplx phase = apq / g;
                const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // two-column update of A and V, then the matching two-row update of A
                const Cplx jp_q = s;                    // J(p,q)
                const Cplx jq_p = -s * std::conj(phase);  // J(q,p)
                const Cplx jq_q = c * std::conj(phase);   // J(q,q)
                for (int r = 0; r < n; ++r) {
                    const Cplx arp = a.at(r, p), arq = a.at(r, q);
                    a.at(r, p) = c * arp + jq_p * arq;
                    a.at(r, q) = jp_q * arp + jq_q * arq;
                    const Cplx vrp = v.at(r, p), vrq = v.at(r, q);
                    v.at(r, p) = c * vrp + jq_p * vrq;
                    v.at(r, q) = jp_q * vrp + jq_q * vrq;
                }
                for (int r = 0; r < n; ++r) {
                    const Cplx apr = a.at(p, r), aqr = a.at(q, r);
                    a.at(p, r) = c * apr + std::conj(jq_p) * aqr;
                    a.at(q, r) = std::conj(jp_q) * apr + std::conj(jq_q) * aqr;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
            }
        }
    }

    EigenSystem out;
    out.values.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a.at(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
    out.vectors = Mat(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (int r = 0; r < n; ++r) out.vectors.at(r, k) = v.at(r, order[k]);
    }
    return out;
}

/// Eigenvalues only, ascending.
inline std::vector<double> hermitian_eigenvalues(const Mat& m) {
    return hermitian_eigensystem(m).values;
}

// --- density operators ------------------------------------------------------

/// A validated quantum state: Hermitian, unit trace, positive semidefinite
/// within `tol`.
struct DensityOp {
    Mat mat;
    double tol = 1e-9;

    int dim() const { return mat.dim; }
};

/// Checks the three state invariants and names the violated one on failure.
inline DensityOp validate_density(const Mat& m, double tol = 1e-9) {
    if (!all_finite(m)) throw std::domain_error("density validation: non-finite entry");
    const double herm = hermiticity_defect(m);
    if (herm > tol)
        throw std::domain_error("density validation: Hermiticity violated (defect " +
                                std::to_string(herm) + ")");
    const Cplx tr = trace(m);
    if (std::abs(tr - Cplx(1.0, 0.0)) > tol)
        throw std::domain_error("density validation: trace violated (trace " +
                                std::to_string(tr.real()) + ")");
    const auto ev = hermitian_eigenvalues(0.5 * (m + adjoint(m)));
    if (ev.front() < -tol)
        throw std::domain_error("density validation: positivity violated (min eigenvalue " +
                                std::to_string(ev.front()) + ")");
    return DensityOp{m, tol};
}

}  // namespace icotherm
