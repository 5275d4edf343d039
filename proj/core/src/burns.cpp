#include "starkcheck/burns.hpp"

#include "starkcheck/error.hpp"

namespace starkcheck {

namespace {

mpz_class modp(const mpz_class& a, const mpz_class& d) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

// Every column j of M, scaled by divisors[j], and M itself reduce consistently mod each row's divisor.
bool congruent(const IntMatrix& a, const IntMatrix& b, const std::vector<mpz_class>& d) {
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (modp(a(i, j) - b(i, j), d[i]) != 0) return false;
    return true;
}

bool well_defined(const IntMatrix& a, const std::vector<mpz_class>& d) {
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (modp(a(i, j) * d[j], d[i]) != 0) return false;
    return true;
}

bool zero_class(const std::vector<mpz_class>& x, const std::vector<mpz_class>& d) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (modp(x[i], d[i]) != 0) return false;
    return true;
}

}  // namespace

mpz_class ClassGroupData::order() const {
    mpz_class h = 1;
    for (const auto& d : divisors) h *= d;
    return h;
}

std::vector<std::string> validate_class_group(const ClassGroupData& C, const AbelianGroup& G, const PlaceSet* P) {
    std::vector<std::string> issues;
    const std::size_t k = C.divisors.size();
    for (const auto& d : C.divisors)
        if (d < 1) issues.push_back("class_group: divisors must be positive");
    if (!issues.empty()) return issues;
    if (C.action.size() != G.order() && !(k == 0 && C.action.empty())) {
        issues.push_back("class_group: one action matrix per automorphism required");
        return issues;
    }
    if (k == 0) return issues;
    for (const auto& a : C.action)
        if (a.rows != k || a.cols != k) {
            issues.push_back("class_group: action matrix has the wrong shape");
            return issues;
        }
    for (std::size_t s = 0; s < G.order(); ++s)
        if (!well_defined(C.action[s], C.divisors)) issues.push_back("class_group: action of " + G.labels[s] + " is not well defined");
    if (!congruent(C.action[0], IntMatrix::identity(k), C.divisors)) issues.push_back("class_group: identity acts nontrivially");
    for (std::size_t a = 0; a < G.order(); ++a)
        for (std::size_t b = 0; b < G.order(); ++b)
            if (!congruent(C.action[a] * C.action[b], C.action[static_cast<std::size_t>(G.mul[a][b])], C.divisors)) {
                issues.push_back("class_group: action violates the group law");
                a = G.order();
                break;
            }
    if (P) {
        const auto fin = P->finite_places();
        if (C.place_classes.size() != fin.size()) {
            issues.push_back("class_group: one class per finite place of S_K required");
            return issues;
        }
        for (const auto& c : C.place_classes)
            if (c.size() != k) issues.push_back("class_group: place class has the wrong length");
        if (!issues.empty()) return issues;
        for (std::size_t s = 0; s < G.order(); ++s)
            for (std::size_t r = 0; r < fin.size(); ++r) {
                int img = P->galois_perm[s][static_cast<std::size_t>(fin[r])];
                auto moved = C.action[s] * C.place_classes[r];
                const auto& target = C.place_classes[static_cast<std::size_t>(P->finite_row(img))];
                std::vector<mpz_class> diff(k);
                for (std::size_t i = 0; i < k; ++i) diff[i] = moved[i] - target[i];
                if (!zero_class(diff, C.divisors)) {
                    issues.push_back("class_group: place classes are not permuted by the action");
                    s = G.order();
                    break;
                }
            }
    }
    return issues;
}

bool annihilates(const ZGroupRing& a, const ClassGroupData& C) {
    const std::size_t k = C.divisors.size();
    if (k == 0) return true;
    IntMatrix M(k, k, mpz_class(0));
    for (std::size_t s = 0; s < a.c.size(); ++s) {
        if (a.c[s] == 0) continue;
        const IntMatrix& A = C.action[s];
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) M(i, j) += a.c[s] * A(i, j);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (modp(M(i, j), C.divisors[i]) != 0) return false;
    return true;
}

ClassGroupData s_quotient(const ClassGroupData& C, const AbelianGroup& G) {
    const std::size_t k = C.divisors.size();
    if (k == 0 || C.place_classes.empty()) return C;
    IntMatrix R(k + C.place_classes.size(), k, mpz_class(0));
    for (std::size_t i = 0; i < k; ++i) R(i, i) = C.divisors[i];
    for (std::size_t r = 0; r < C.place_classes.size(); ++r)
        for (std::size_t j = 0; j < k; ++j) R(k + r, j) = C.place_classes[r][j];
    SmithForm f = smith_normal_form(R);
    // Row coordinates y = x V; the cyclic factors with d_i != 1 survive.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i)
        if (f.diag[i] != 1) keep.push_back(i);
    ClassGroupData Q;
    for (std::size_t i : keep) Q.divisors.push_back(f.diag[i]);
    const std::size_t q = keep.size();
    if (q == 0) return Q;
    for (std::size_t s = 0; s < G.order(); ++s) {
        // Column action B = V^T A V^-T, restricted to the kept coordinates.
        IntMatrix B = f.V.transpose() * C.action[s] * f.Vinv.transpose();
        IntMatrix Bq(q, q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b) Bq(a, b) = modp(B(keep[a], keep[b]), Q.divisors[a]);
        Q.action.push_back(std::move(Bq));
    }
    for (const auto& c : C.place_classes) {
        std::vector<mpz_class> y = f.V.transpose() * c;
        std::vector<mpz_class> yq;
        for (std::size_t a = 0; a < q; ++a) yq.push_back(modp(y[keep[a]], Q.divisors[a]));
        Q.place_classes.push_back(std::move(yq));
    }
    auto issues = validate_class_group(Q, G);
    if (!issues.empty()) throw Error(Errc::ActionNotWellDefined, issues.front());
    for (const auto& c : Q.place_classes)
        if (!zero_class(c, Q.divisors)) throw Error(Errc::ActionNotWellDefined, "S-place class survives in the quotient");
    return Q;
}

bool element_annihilates(const QGroupRing& beta_e, const mpz_class& factor, const ClassGroupData& C) {
    QGroupRing x = beta_e * mpq_class(factor);
    if (denominator(x) != 1) return false;
    return annihilates(to_integral(x), C);
}

bool twisted_annihilation(const QGroupRing& beta_e, const mpz_class& m, long w_K, int r, int sigma, const ClassGroupData& C) {
    mpz_class mr;
    mpz_pow_ui(mr.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(r));
    QGroupRing b = QGroupRing::basis(beta_e.G, sigma) - QGroupRing::basis(beta_e.G, 0);
    return element_annihilates(b * beta_e, w_K * mr, C);
}

BurnsVerdict classify_statements(const QGroupRing& beta_e, const mpz_class& d, const mpz_class& m, long w_K, int r,
                                 const ClassGroupData& C, const ClassGroupData& C_S) {
    BurnsVerdict v;
    mpz_class mr;
    mpz_pow_ui(mr.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(r));
    v.integral = denominator(beta_e * mpq_class(w_K * mr)) == 1;
    v.statements = {element_annihilates(beta_e, d, C), element_annihilates(beta_e, w_K * m, C),
                    element_annihilates(beta_e, w_K * mr, C), element_annihilates(beta_e, w_K * mr, C_S)};
    for (std::size_t k = 0; k < 4; ++k)
        if (v.statements[k]) {
            if (!v.statement) v.statement = static_cast<int>(k) + 1;
        } else if (v.statement) {
            v.monotone = false;
        }
    v.d_divides_2m = mpz_class(w_K * m) % d == 0;
    mpz_class m2 = m * m;
    v.d_divides_2m2 = mpz_class(w_K * m2) % d == 0;
    v.extra_2m_on_cl_s = element_annihilates(beta_e, w_K * m, C_S);
    v.twisted_ok = true;
    for (std::size_t s = 1; s < beta_e.c.size(); ++s)
        if (!twisted_annihilation(beta_e, m, w_K, r, static_cast<int>(s), C)) v.twisted_ok = false;
    return v;
}

}  // namespace starkcheck
