#include "starkcheck/stark.hpp"

#include "starkcheck/error.hpp"

namespace starkcheck {

const LValue* LValueTable::find(const Character& chi) const {
    for (const auto& v : values)
        if (v.angles == chi.angle) return &v;
    return nullptr;
}

Complex LValueTable::value(const Character& chi) const {
    const LValue* v = find(chi);
    if (!v) throw Error(Errc::MissingLValue, "no L-value for a character of order " + std::to_string(chi.order));
    Complex z(Real(std::string_view(v->re)), Real(std::string_view(v->im)));
    if (abs(z).is_zero()) throw Error(Errc::MissingLValue, "L-value is zero");
    return z;
}

std::vector<std::string> validate_lvalues(const LValueTable& t, const std::vector<Character>& chars, const PlaceSet& P) {
    std::vector<std::string> issues;
    for (const auto& v : t.values) {
        int k = -1;
        for (std::size_t i = 0; i < chars.size(); ++i)
            if (chars[i].angle == v.angles) k = static_cast<int>(i);
        if (k < 0) {
            issues.push_back("lvalues: entry does not match any character");
            continue;
        }
        const Character& chi = chars[static_cast<std::size_t>(k)];
        if (v.order != order_of_vanishing(chi, P))
            issues.push_back("lvalues: claimed order " + std::to_string(v.order) + " differs from the order of vanishing " +
                             std::to_string(order_of_vanishing(chi, P)) + " for character " + std::to_string(k));
        try {
            Complex z(Real(std::string_view(v.re)), Real(std::string_view(v.im)));
            if (abs(z).is_zero()) issues.push_back("lvalues: zero leading term for character " + std::to_string(k));
            if (const LValue* c = t.find(chi.conj())) {
                Complex w(Real(std::string_view(c->re)), Real(std::string_view(c->im)));
                Real tol = tolerance(t.stated_bits > 0 ? std::min(t.stated_bits, current_precision()) : current_precision());
                Real scale = abs(z) + Real(1L);
                if (abs(z - conj(w)) > tol * scale)
                    issues.push_back("lvalues: conjugate characters lack conjugate values (character " + std::to_string(k) + ")");
            }
        } catch (const std::exception&) {
            issues.push_back("lvalues: unparsable decimal for character " + std::to_string(k));
        }
    }
    return issues;
}

Complex stark_regulator(const Character& chi, const ArtinSystem& A, const SUnitLattice& L) {
    const PlaceSet& P = L.places();
    const std::size_t ns = P.n_s();
    std::vector<int> I;
    std::vector<SUnit> units;
    if (chi.is_trivial()) {
        const SUnit& last = A.eps[static_cast<std::size_t>(P.distinguished[ns - 1])];
        for (std::size_t i = 0; i + 1 < ns; ++i) {
            I.push_back(static_cast<int>(i));
            units.push_back(A.eps[static_cast<std::size_t>(P.distinguished[i])] / last);
        }
    } else {
        for (std::size_t i = 0; i < ns; ++i)
            if (chi.contains_in_kernel(P.decomposition_groups[i])) {
                I.push_back(static_cast<int>(i));
                units.push_back(A.eps[static_cast<std::size_t>(P.distinguished[i])]);
            }
    }
    Complex R = L.R_I_det(I, units, chi.conj());
    Real scale(1L);
    for (const auto& u : units)
        for (const auto& v : L.log_vector(u))
            if (abs(v) > scale) scale = abs(v);
    if (abs(R) < tolerance(current_precision()) * scale) throw Error(Errc::RegulatorVanishes, "Stark regulator is zero");
    return R;
}

std::vector<Real> beta_numeric(const std::vector<int>& chars, const std::vector<Character>& table, const LValueTable& lv,
                               const ArtinSystem& A, const SUnitLattice& L) {
    const GroupPtr& G = L.group();
    const std::size_t n = G->order();
    std::vector<Complex> b(n);
    for (int k : chars) {
        const Character& chi = table[static_cast<std::size_t>(k)];
        Complex a = lv.value(chi) / stark_regulator(chi, A, L);
        // e_chi-bar has coefficient chi(s)/|G| at s.
        for (std::size_t s = 0; s < n; ++s) b[s] += a * chi.value(static_cast<int>(s));
    }
    const Real nn(static_cast<long>(n));
    const long bits = lv.stated_bits > 0 ? std::min(lv.stated_bits, current_precision()) : current_precision();
    std::vector<Real> out;
    for (auto& z : b) {
        Real re = z.re / nn, im = z.im / nn;
        if (abs(im) > tolerance(bits) * (abs(re) + Real(1L)))
            throw Error(Errc::ConjugationAsymmetry, "beta has a non-real coefficient");
        out.push_back(re);
    }
    return out;
}

std::optional<mpq_class> recognize_rational(const Real& x, const mpz_class& max_den, long bits) {
    const mpq_class q = x.to_rational();
    const mpq_class tol = Real::pow2(-bits / 2).to_rational();
    const mpz_class gap = mpz_class(1) << static_cast<mp_bitcnt_t>(bits / 4);
    // Exact continued fraction of the binary value.
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    while (den != 0) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class h_new = a * h_prev + h, k_new = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_new;
        k_prev = k_new;
        num = den;
        den = r;
        if (k_prev > max_den) return std::nullopt;
        mpq_class cand(h_prev, k_prev);
        cand.canonicalize();
        if (abs(q - cand) >= tol) continue;
        if (den == 0) return cand;
        mpz_class next;
        mpz_fdiv_q(next.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (next >= gap) return cand;
    }
    return std::nullopt;
}

BetaResult recognize_rationals(const std::vector<Real>& b, const GroupPtr& G, const mpz_class& max_den, long bits) {
    BetaResult r;
    r.numeric = b;
    r.exact = QGroupRing(G);
    r.residual = Real(0L);
    for (std::size_t s = 0; s < b.size(); ++s) {
        auto q = recognize_rational(b[s], max_den, bits);
        if (!q) throw Error(Errc::RecognitionFailed, "coefficient at " + G->labels[s] + " = " + b[s].to_string(30) + " is not recognized");
        r.exact.c[s] = *q;
        Real e = abs(b[s] - Real(*q));
        if (e > r.residual) r.residual = e;
    }
    r.d = denominator(r.exact);
    return r;
}

LValueTable derive_lvalues(const QGroupRing& beta, const std::vector<int>& chars, const std::vector<Character>& table,
                           const ArtinSystem& A, const SUnitLattice& L, const PlaceSet& P) {
    LValueTable t;
    t.stated_bits = current_precision();
    const int digits = decimal_digits_for(current_precision());
    for (int k : chars) {
        const Character& chi = table[static_cast<std::size_t>(k)];
        Complex a;
        for (std::size_t s = 0; s < beta.c.size(); ++s)
            if (beta.c[s] != 0) a += conj(chi.value(static_cast<int>(s))) * Complex(Real(beta.c[s]));
        Complex Ls = a * stark_regulator(chi, A, L);
        LValue v;
        v.angles = chi.angle;
        v.re = Ls.re.to_string(digits);
        v.im = Ls.im.is_zero() ? "0" : Ls.im.to_string(digits);
        v.order = order_of_vanishing(chi, P);
        t.values.push_back(std::move(v));
    }
    return t;
}

}  // namespace starkcheck
