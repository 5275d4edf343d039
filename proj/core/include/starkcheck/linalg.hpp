#pragma once

#include "starkcheck/real.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace starkcheck {

template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                              a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using RealMatrix = Matrix<Real>;

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
std::vector<mpz_class> operator*(const IntMatrix& m, const std::vector<mpz_class>& v);

// Exact determinant by fraction-free elimination.
mpz_class det_bareiss(IntMatrix m);
mpq_class det(RatMatrix m);

// U * A * V = D with U, V unimodular; diag holds d_1 | d_2 | ... (nonnegative),
// rank the number of nonzero d_i. Vinv is V's inverse.
struct SmithForm {
    IntMatrix U;
    IntMatrix V;
    IntMatrix Vinv;
    std::vector<mpz_class> diag;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& A);

// Basis (as rows) of {n : n * A = 0}.
IntMatrix left_kernel(const IntMatrix& A);

// Square solve by partial pivoting; throws SingularMatrix.
std::vector<Real> solve(RealMatrix A, std::vector<Real> b);
Real det(RealMatrix m);

// A (k x t, k >= t) assumed consistent; picks t pivot rows. `residual` gets the
// largest mismatch over the rows not used as pivots.
std::vector<Real> solve_consistent(const RealMatrix& A, const std::vector<Real>& b, Real* residual = nullptr);

Complex det(std::vector<std::vector<Complex>> m);

}  // namespace starkcheck
