#include <catch2/catch_amalgamated.hpp>

#include "icotherm/matrix.hpp"
#include "test_helpers.hpp"

using namespace icotherm;
using icotest::random_density;
using icotest::random_hermitian;
using icotest::random_matrix;

TEST_CASE("adjoint", "[matrix]") {
    CHECK(max_abs_diff(adjoint(Mat::identity(2)), Mat::identity(2)) == 0.0);
    CHECK(max_abs_diff(adjoint(pauli_z()), pauli_z()) == 0.0);
    CHECK(max_abs_diff(adjoint(basis_op(0, 1)), basis_op(1, 0)) == 0.0);

    SECTION("involution is exact") {
        SplitMix64 rng(11);
        for (int i = 0; i < 50; ++i) {
            const Mat m = random_matrix(rng, i % 2 ? 2 : 4);
            CHECK(max_abs_diff(adjoint(adjoint(m)), m) == 0.0);
        }
    }
}

TEST_CASE("matmul", "[matrix]") {
    CHECK(max_abs_diff(Mat::identity(2) * pauli_z(), pauli_z()) == 0.0);
    CHECK(max_abs_diff(basis_op(1, 0) * basis_op(0, 1), basis_op(1, 1)) == 0.0);
    CHECK(max_abs(basis_op(0, 0) * basis_op(1, 0)) == 0.0);
    CHECK_THROWS_AS(matmul(Mat::identity(2), Mat::identity(4)), std::invalid_argument);
}

TEST_CASE("kron layout", "[matrix]") {
    CHECK(max_abs_diff(kron(Mat::identity(2), Mat::identity(2)), Mat::identity(4)) == 0.0);

    Mat zblock(4);
    zblock.at(0, 0) = 1.0;
    zblock.at(1, 1) = 1.0;
    zblock.at(2, 2) = -1.0;
    zblock.at(3, 3) = -1.0;
    CHECK(max_abs_diff(kron(pauli_z(), Mat::identity(2)), zblock) == 0.0);

    Mat prod(4);
    prod.at(0, 0) = 0.25;
    prod.at(2, 2) = 0.75;
    CHECK(max_abs_diff(kron(diag2(0.25, 0.75), basis_op(0, 0)), prod) == 0.0);
}

TEST_CASE("trace", "[matrix]") {
    CHECK(trace(Mat::identity(4)) == Cplx(4.0, 0.0));
    CHECK(trace(pauli_z()) == Cplx(0.0, 0.0));

    SplitMix64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto rho = random_density(rng, 4);
        CHECK(std::abs(trace(rho.mat) - Cplx(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("partial trace over the controller", "[matrix]") {
    CHECK_THROWS_AS(partial_trace_controller(Mat::identity(2)), std::invalid_argument);

    SECTION("recovers the system factor of a product state") {
        SplitMix64 rng(17);
        for (int i = 0; i < 40; ++i) {
            const auto rho = random_density(rng, 2);
            const auto ctrl = random_density(rng, 2);
            CHECK(max_abs_diff(partial_trace_controller(kron(rho.mat, ctrl.mat)), rho.mat) <
                  1e-14);
        }
    }

    SECTION("maximally entangled projector reduces to I/2") {
        // |phi> = (|00> + |11>)/sqrt(2)
        Mat proj(4);
        for (int i : {0, 3})
            for (int j : {0, 3}) proj.at(i, j) = 0.5;
        CHECK(max_abs_diff(partial_trace_controller(proj), diag2(0.5, 0.5)) < 1e-15);
    }
}

TEST_CASE("hermitian eigensolver", "[matrix]") {
    SECTION("diagonal input is returned exactly") {
        const auto ev = hermitian_eigenvalues(diag2(0.3, 0.7));
        CHECK(ev[0] == 0.3);
        CHECK(ev[1] == 0.7);
    }

    SECTION("sigma_x") {
        const auto ev = hermitian_eigenvalues(pauli_x());
        CHECK_THAT(ev[0], Catch::Matchers::WithinAbs(-1.0, 1e-14));
        CHECK_THAT(ev[1], Catch::Matchers::WithinAbs(1.0, 1e-14));
    }

    SECTION("ascending order, trace sum, and reconstruction") {
        SplitMix64 rng(23);
        for (int i = 0; i < 40; ++i) {
            const Mat m = random_hermitian(rng, i % 2 ? 2 : 4);
            const EigenSystem es = hermitian_eigensystem(m);
            double sum = 0.0;
            for (std::size_t k = 0; k + 1 < es.values.size(); ++k)
                CHECK(es.values[k] <= es.values[k + 1]);
            for (double v : es.values) sum += v;
            CHECK_THAT(sum, Catch::Matchers::WithinAbs(trace(m).real(), 1e-12));

            Mat lam(m.dim);
            for (int k = 0; k < m.dim; ++k) lam.at(k, k) = es.values[k];
            CHECK(max_abs_diff(es.vectors * lam * adjoint(es.vectors), m) < 1e-13);
            CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, Mat::identity(m.dim)) < 1e-13);
        }
    }

    SECTION("non-Hermitian input is rejected") {
        CHECK_THROWS_AS(hermitian_eigenvalues(basis_op(0, 1)), std::invalid_argument);
    }
}

TEST_CASE("density validation names the violated invariant", "[matrix]") {
    CHECK_NOTHROW(validate_density(diag2(0.5, 0.5)));
    CHECK_THROWS_WITH(validate_density(diag2(1.1, -0.1)),
                      Catch::Matchers::ContainsSubstring("positivity"));
    CHECK_THROWS_WITH(validate_density(diag2(0.6, 0.6)),
                      Catch::Matchers::ContainsSubstring("trace"));
    CHECK_THROWS_WITH(validate_density(basis_op(0, 1) + diag2(0.5, 0.5)),
                      Catch::Matchers::ContainsSubstring("Hermiticity"));
}
