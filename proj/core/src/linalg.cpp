#include "starkcheck/linalg.hpp"

#include "starkcheck/error.hpp"

#include <utility>

namespace starkcheck {

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.rows, y.cols, mpz_class(0));
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

std::vector<mpz_class> operator*(const IntMatrix& m, const std::vector<mpz_class>& v) {
    std::vector<mpz_class> r(m.rows, mpz_class(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

mpz_class det_bareiss(IntMatrix m) {
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j));
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

mpq_class det(RatMatrix m) {
    const std::size_t n = m.rows;
    mpq_class d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            mpq_class f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

namespace {

struct SmithWork {
    IntMatrix A, U, V, Vinv;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
        for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
        for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
        for (std::size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv(i, c), Vinv(j, c));
    }
    // row i -= q * row j
    void row_sub(std::size_t i, std::size_t j, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < A.cols; ++c) A(i, c) -= q * A(j, c);
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) -= q * U(j, c);
    }
    // col i -= q * col j
    void col_sub(std::size_t i, std::size_t j, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < A.rows; ++r) A(r, i) -= q * A(r, j);
        for (std::size_t r = 0; r < V.rows; ++r) V(r, i) -= q * V(r, j);
        for (std::size_t c = 0; c < Vinv.cols; ++c) Vinv(j, c) += q * Vinv(i, c);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
    }
};

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    SmithWork w{A, IntMatrix::identity(A.rows), IntMatrix::identity(A.cols), IntMatrix::identity(A.cols)};
    const std::size_t n = std::min(A.rows, A.cols);
    std::size_t t = 0;
    for (; t < n; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = A.rows, pj = A.cols;
            for (std::size_t i = t; i < A.rows; ++i)
                for (std::size_t j = t; j < A.cols; ++j)
                    if (w.A(i, j) != 0 && (pi == A.rows || abs(w.A(i, j)) < abs(w.A(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == A.rows) goto done;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < A.rows; ++i) {
                w.row_sub(i, t, fdiv(w.A(i, t), w.A(t, t)));
                if (w.A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < A.cols; ++j) {
                w.col_sub(j, t, fdiv(w.A(t, j), w.A(t, t)));
                if (w.A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce the divisibility chain.
            bool divides = true;
            for (std::size_t i = t + 1; i < A.rows && divides; ++i)
                for (std::size_t j = t + 1; j < A.cols; ++j)
                    if (w.A(i, j) % w.A(t, t) != 0) {
                        w.row_sub(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (w.A(t, t) < 0) w.negate_row(t);
    }
done:
    SmithForm f;
    f.rank = t;
    f.diag.assign(n, mpz_class(0));
    for (std::size_t i = 0; i < t; ++i) f.diag[i] = w.A(i, i);
    f.U = std::move(w.U);
    f.V = std::move(w.V);
    f.Vinv = std::move(w.Vinv);
    return f;
}

IntMatrix left_kernel(const IntMatrix& A) {
    SmithForm f = smith_normal_form(A);
    IntMatrix k(A.rows - f.rank, A.rows);
    for (std::size_t i = f.rank; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.rows; ++j) k(i - f.rank, j) = f.U(i, j);
    return k;
}

std::vector<Real> solve(RealMatrix A, std::vector<Real> b) {
    const std::size_t n = A.rows;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs(A(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best.is_zero()) throw Error(Errc::SingularMatrix, "pivot vanished in linear solve");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = A(i, k) / A(k, k);
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

Real det(RealMatrix m) {
    const std::size_t n = m.rows;
    Real d(1L);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs(m(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best.is_zero()) return Real(0L);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

std::vector<Real> solve_consistent(const RealMatrix& A, const std::vector<Real>& b, Real* residual) {
    const std::size_t k = A.rows, t = A.cols;
    if (k < t) throw Error(Errc::SingularMatrix, "underdetermined system");
    // Column-by-column pivot selection over all remaining rows.
    RealMatrix M = A;
    std::vector<Real> rhs = b;
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    for (std::size_t c = 0; c < t; ++c) {
        std::size_t p = c;
        Real best = abs(M(order[c], c));
        for (std::size_t i = c + 1; i < k; ++i) {
            Real v = abs(M(order[i], c));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best.is_zero()) throw Error(Errc::SingularMatrix, "rank deficient system");
        std::swap(order[c], order[p]);
        const std::size_t pr = order[c];
        for (std::size_t i = c + 1; i < k; ++i) {
            const std::size_t r = order[i];
            Real f = M(r, c) / M(pr, c);
            for (std::size_t j = c; j < t; ++j) M(r, j) -= f * M(pr, j);
            rhs[r] -= f * rhs[pr];
        }
    }
    std::vector<Real> x(t);
    for (std::size_t c = t; c-- > 0;) {
        const std::size_t r = order[c];
        Real s = rhs[r];
        for (std::size_t j = c + 1; j < t; ++j) s -= M(r, j) * x[j];
        x[c] = s / M(r, c);
    }
    if (residual) {
        Real worst(0L);
        for (std::size_t i = t; i < k; ++i) {
            Real v = abs(rhs[order[i]]);
            if (v > worst) worst = v;
        }
        *residual = worst;
    }
    return x;
}

Complex det(std::vector<std::vector<Complex>> m) {
    const std::size_t n = m.size();
    Complex d(Real(1L), Real(0L));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs(m[i][k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best.is_zero()) return Complex();
        if (p != k) {
            std::swap(m[k], m[p]);
            d = -d;
        }
        d *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

}  // namespace starkcheck
