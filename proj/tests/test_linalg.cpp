#include "doctest.h"

#include "starkcheck/error.hpp"
#include "starkcheck/linalg.hpp"

#include <random>

using namespace starkcheck;

namespace {

IntMatrix imat(std::size_t r, std::size_t c, std::initializer_list<long> v) {
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (long x : v) m.a[i++] = x;
    return m;
}

bool is_diagonal_form(const IntMatrix& D, const std::vector<mpz_class>& diag) {
    for (std::size_t i = 0; i < D.rows; ++i)
        for (std::size_t j = 0; j < D.cols; ++j) {
            mpz_class want = (i == j && i < diag.size()) ? diag[i] : mpz_class(0);
            if (D(i, j) != want) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("smith normal form of a textbook matrix") {
    IntMatrix A = imat(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
    SmithForm s = smith_normal_form(A);
    REQUIRE(s.diag.size() >= 3);
    CHECK(s.diag[0] == 2);
    CHECK(s.diag[1] == 6);
    CHECK(s.diag[2] == 12);
    CHECK(s.rank == 3);
    CHECK(is_diagonal_form(s.U * A * s.V, s.diag));
    CHECK(s.V * s.Vinv == IntMatrix::identity(3));
}

TEST_CASE("smith normal form of rectangular and singular matrices") {
    IntMatrix A = imat(2, 3, {1, 2, 3, 2, 4, 6});
    SmithForm s = smith_normal_form(A);
    CHECK(s.rank == 1);
    CHECK(s.diag[0] == 1);
    CHECK(is_diagonal_form(s.U * A * s.V, s.diag));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix B(4, 3);
        for (auto& x : B.a) x = d(rng);
        SmithForm t = smith_normal_form(B);
        CHECK(is_diagonal_form(t.U * B * t.V, t.diag));
        for (std::size_t i = 1; i < t.rank; ++i) CHECK(t.diag[i] % t.diag[i - 1] == 0);
    }
}

TEST_CASE("determinants agree") {
    IntMatrix A = imat(3, 3, {2, -1, 0, -1, 2, -1, 0, -1, 2});
    CHECK(det_bareiss(A) == 4);
    RatMatrix R(3, 3);
    for (std::size_t i = 0; i < 9; ++i) R.a[i] = mpq_class(A.a[i]);
    CHECK(det(R) == 4);
    CHECK(det_bareiss(imat(2, 2, {1, 2, 2, 4})) == 0);
}

TEST_CASE("left kernel") {
    IntMatrix A = imat(3, 2, {1, 0, 0, 1, 1, 1});
    IntMatrix K = left_kernel(A);
    REQUIRE(K.rows == 1);
    IntMatrix prod = K * A;
    for (const auto& x : prod.a) CHECK(x == 0);
    CHECK(abs(K(0, 0)) == 1);
}

TEST_CASE("real solves") {
    PrecisionScope ps(128);
    RealMatrix A(2, 2);
    A(0, 0) = Real(2L);
    A(0, 1) = Real(1L);
    A(1, 0) = Real(1L);
    A(1, 1) = Real(3L);
    auto x = solve(A, {Real(3L), Real(5L)});
    CHECK(abs(x[0] - Real(mpq_class(4, 5))) < Real::pow2(-120));
    CHECK(abs(x[1] - Real(mpq_class(7, 5))) < Real::pow2(-120));
    CHECK(abs(det(A) - Real(5L)) < Real::pow2(-120));

    RealMatrix S(2, 2, Real(1L));
    try {
        (void)solve(S, {Real(1L), Real(2L)});
        FAIL("expected SingularMatrix");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SingularMatrix);
    }
}
