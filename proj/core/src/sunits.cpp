#include "starkcheck/sunits.hpp"

#include "starkcheck/error.hpp"

namespace starkcheck {

bool SUnit::is_one() const {
    if (sign != 1) return false;
    for (const auto& e : exps)
        if (e != 0) return false;
    return true;
}

SUnit& SUnit::operator*=(const SUnit& o) {
    if (exps.size() != o.exps.size()) throw Error(Errc::DomainMismatch, "S-units of different lattices");
    sign *= o.sign;
    for (std::size_t j = 0; j < exps.size(); ++j) exps[j] += o.exps[j];
    return *this;
}

SUnit SUnit::inverse() const {
    SUnit r = *this;
    for (auto& e : r.exps) e = -e;
    return r;
}

SUnit SUnit::pow(const mpz_class& e) const {
    SUnit r = *this;
    for (auto& v : r.exps) v *= e;
    if (sign < 0 && mpz_even_p(e.get_mpz_t())) r.sign = 1;
    return r;
}

SUnit operator*(SUnit a, const SUnit& b) { return a *= b; }
SUnit operator/(SUnit a, const SUnit& b) { return a *= b.inverse(); }

SUnitLattice::SUnitLattice(GroupPtr G, PlaceSet P, LatticeInput in)
    : G_(std::move(G)), P_(std::move(P)), eta_(std::move(in.fundamental)), torsion_(in.torsion_order), val_(std::move(in.valuations)) {
    const std::size_t t = eta_.size(), nsk = P_.n_sk();
    const long bits = current_precision();
    if (t + 1 != nsk) throw Error(Errc::ValidationError, "fundamental system must have |S_K| - 1 elements");
    const auto fin = P_.finite_places();
    if (val_.rows != fin.size() || val_.cols != t) throw Error(Errc::ValidationError, "valuation matrix has the wrong shape");
    for (const auto& e : eta_) eta_inv_.push_back(e.inverse());

    logs_ = RealMatrix(nsk, t);
    real_sign_.assign(nsk, std::vector<int>(t, 0));
    for (std::size_t w = 0; w < nsk; ++w) {
        const Place& pl = P_.sk_places[w];
        for (std::size_t j = 0; j < t; ++j) {
            if (pl.kind == PlaceKind::Real) {
                Real v = nf_embed(eta_[j], P_.roots[static_cast<std::size_t>(pl.root)], bits);
                real_sign_[w][j] = v.sign();
                logs_(w, j) = log(abs(v));
            } else {
                long ord = val_(static_cast<std::size_t>(P_.finite_row(static_cast<int>(w))), j).get_si();
                logs_(w, j) = Real(-ord) * log(Real(pl.norm));
            }
        }
    }
    Real scale(1L);
    for (const auto& v : logs_.a)
        if (abs(v) > scale) scale = abs(v);
    if (product_formula_defect() > Real(static_cast<long>(nsk)) * tolerance(bits) * scale)
        throw Error(Errc::PrecisionExhausted, "product formula fails for the fundamental system");

    const std::size_t n = G_->order();
    M_.resize(n);
    sgn_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        M_[s] = IntMatrix(t, t, mpz_class(0));
        sgn_[s].assign(t, 1);
        const auto& inv_perm = P_.galois_perm[static_cast<std::size_t>(G_->inv[s])];
        for (std::size_t j = 0; j < t; ++j) {
            FieldElement img = eta_[j].apply_aut(G_->elements[s]);
            // ord_w(eta^s) = ord_{w^{s^-1}}(eta)
            std::vector<long> ords;
            for (int w : fin)
                ords.push_back(val_(static_cast<std::size_t>(P_.finite_row(inv_perm[static_cast<std::size_t>(w)])), j).get_si());
            SUnit u = decompose(img, ords);
            for (std::size_t k = 0; k < t; ++k) M_[s](k, j) = u.exps[k];
            sgn_[s][j] = u.sign;
            // Independent cross-check of the finite-place action through the valuation rows.
            for (std::size_t r = 0; r < fin.size(); ++r)
                if (valuation(u, fin[r]) != ords[r])
                    throw Error(Errc::ActionMismatch, "finite place permutation disagrees with the valuations of Galois conjugates");
        }
    }
    if (!(M_[0] == IntMatrix::identity(t))) throw Error(Errc::ActionMismatch, "identity does not act trivially");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t ab = static_cast<std::size_t>(G_->mul[a][b]);
            if (!(M_[a] * M_[b] == M_[ab])) throw Error(Errc::ActionMismatch, "Galois matrices violate the group law");
            for (std::size_t j = 0; j < t; ++j) {
                SUnit col = act(static_cast<int>(a), act(static_cast<int>(b), SUnit::basis(t, j)));
                if (col.sign != sgn_[ab][j]) throw Error(Errc::ActionMismatch, "Galois sign vectors violate the group law");
            }
        }
}

SUnit SUnitLattice::decompose(const FieldElement& a, const std::optional<std::vector<long>>& ords) const {
    const std::size_t t = rank(), nsk = P_.n_sk();
    const long bits = current_precision();
    std::vector<std::size_t> rows;
    std::vector<Real> rhs;
    for (std::size_t w = 0; w < nsk; ++w) {
        const Place& pl = P_.sk_places[w];
        std::optional<long> ord;
        if (pl.kind == PlaceKind::Finite) {
            if (ords) ord = (*ords)[static_cast<std::size_t>(P_.finite_row(static_cast<int>(w)))];
            else ord = valuation_from_norm(a, P_, static_cast<int>(w));
            if (!ord) continue;
        }
        rows.push_back(w);
        rhs.push_back(starkcheck::log_abs(a, P_, static_cast<int>(w), bits, ord));
    }
    if (rows.size() < t) throw Error(Errc::ValuationUnavailable, "too few places with known absolute values to decompose");
    RealMatrix A(rows.size(), t);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < t; ++j) A(i, j) = logs_(rows[i], j);
    Real residual(0L);
    std::vector<Real> x = solve_consistent(A, rhs, &residual);
    Real scale(1L);
    for (const auto& v : rhs)
        if (abs(v) > scale) scale = abs(v);
    if (residual > tolerance(bits) * scale * Real(static_cast<long>(nsk)))
        throw Error(Errc::NotInLattice, "log vector is not in the span of the fundamental system");
    SUnit u = SUnit::one(t);
    for (std::size_t j = 0; j < t; ++j) {
        u.exps[j] = x[j].round();
        if (abs(x[j] - Real(u.exps[j])) > Real(0.25))
            throw Error(Errc::NotInLattice, "exponent far from an integer");
    }
    FieldElement prod = to_field(u);
    if (prod == a) return u;
    if (prod == -a) {
        u.sign = -1;
        return u;
    }
    throw Error(Errc::NotInLattice, "rounded exponents do not reproduce the element");
}

FieldElement SUnitLattice::to_field(const SUnit& u) const {
    FieldElement r(G_->field, mpq_class(u.sign));
    for (std::size_t j = 0; j < rank(); ++j) {
        const mpz_class& e = u.exps[j];
        if (e == 0) continue;
        if (!e.fits_slong_p()) throw Error(Errc::PrecisionExhausted, "exponent too large to expand");
        long k = e.get_si();
        r *= k > 0 ? eta_[j].pow(k) : eta_inv_[j].pow(-k);
    }
    return r;
}

SUnit SUnitLattice::act(int sigma, const SUnit& u) const {
    const auto& M = M_[static_cast<std::size_t>(sigma)];
    const auto& sg = sgn_[static_cast<std::size_t>(sigma)];
    SUnit r;
    r.exps = M * u.exps;
    r.sign = u.sign;
    for (std::size_t j = 0; j < rank(); ++j)
        if (sg[j] < 0 && mpz_odd_p(u.exps[j].get_mpz_t())) r.sign = -r.sign;
    return r;
}

SUnit SUnitLattice::act(const ZGroupRing& a, const SUnit& u) const {
    SUnit r = SUnit::one(rank());
    for (std::size_t s = 0; s < a.c.size(); ++s)
        if (a.c[s] != 0) r *= act(static_cast<int>(s), u).pow(a.c[s]);
    return r;
}

SUnit SUnitLattice::act(const QGroupRing& a, const SUnit& u) const { return act(to_integral(a), u); }

Real SUnitLattice::log_abs(const SUnit& u, int w) const {
    Real s(0L);
    for (std::size_t j = 0; j < rank(); ++j)
        if (u.exps[j] != 0) s += Real(u.exps[j]) * logs_(static_cast<std::size_t>(w), j);
    return s;
}

mpz_class SUnitLattice::valuation(const SUnit& u, int w) const {
    int row = P_.finite_row(w);
    if (row < 0) return 0;
    mpz_class v = 0;
    for (std::size_t j = 0; j < rank(); ++j) v += val_(static_cast<std::size_t>(row), j) * u.exps[j];
    return v;
}

int SUnitLattice::embedding_sign(const SUnit& u, int w) const {
    int s = u.sign;
    for (std::size_t j = 0; j < rank(); ++j)
        if (real_sign_[static_cast<std::size_t>(w)][j] < 0 && mpz_odd_p(u.exps[j].get_mpz_t())) s = -s;
    return s;
}

std::vector<Real> SUnitLattice::log_vector(const SUnit& u) const {
    std::vector<Real> v;
    for (std::size_t w = 0; w < P_.n_sk(); ++w) v.push_back(log_abs(u, static_cast<int>(w)));
    return v;
}

CGroupRing SUnitLattice::ell_map(int i, const SUnit& u) const {
    const int wi = P_.distinguished[static_cast<std::size_t>(i)];
    const Real gi(static_cast<long>(P_.decomposition_groups[static_cast<std::size_t>(i)].size()));
    CGroupRing r(G_);
    for (std::size_t s = 0; s < G_->order(); ++s) {
        // |u^s|_{w} = |u|_{w^{s^-1}}
        int w = P_.galois_perm[static_cast<std::size_t>(G_->inv[s])][static_cast<std::size_t>(wi)];
        r.c[static_cast<std::size_t>(G_->inv[s])] = Complex(-log_abs(u, w) / gi, Real(0L));
    }
    return r;
}

Complex SUnitLattice::ell_char(int i, const SUnit& u, const Character& chi) const {
    return apply_char(chi, ell_map(i, u));
}

Complex SUnitLattice::R_I_det(const std::vector<int>& I, const std::vector<SUnit>& units, const Character& chi) const {
    if (I.size() != units.size()) throw Error(Errc::SingularMatrix, "index tuple and unit tuple differ in length");
    std::vector<std::vector<Complex>> m(I.size(), std::vector<Complex>(I.size()));
    for (std::size_t s = 0; s < I.size(); ++s)
        for (std::size_t t = 0; t < units.size(); ++t) m[s][t] = ell_char(I[s], units[t], chi);
    return det(std::move(m));
}

mpz_class SUnitLattice::sublattice_index(const std::vector<SUnit>& gens) const {
    const std::size_t t = rank();
    IntMatrix E(gens.size(), t);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < t; ++j) E(i, j) = gens[i].exps[j];
    if (gens.size() == t) {
        mpz_class d = abs(det_bareiss(E));
        if (d == 0) throw Error(Errc::InfiniteIndex, "generators are dependent");
        return d;
    }
    SmithForm f = smith_normal_form(E);
    if (f.rank < t) throw Error(Errc::InfiniteIndex, "generators do not span a full-rank sublattice");
    mpz_class d = 1;
    for (std::size_t i = 0; i < t; ++i) d *= f.diag[i];
    return d;
}

Real SUnitLattice::regulator(const std::vector<SUnit>& gens, int drop) const {
    const std::size_t t = rank();
    if (gens.size() != t) throw Error(Errc::SingularMatrix, "regulator needs exactly t generators");
    RealMatrix m(t, t);
    std::size_t row = 0;
    for (std::size_t w = 0; w < P_.n_sk(); ++w) {
        if (static_cast<int>(w) == drop) continue;
        for (std::size_t j = 0; j < t; ++j) m(row, j) = log_abs(gens[j], static_cast<int>(w));
        ++row;
    }
    Real d = abs(det(std::move(m)));
    Real scale(1L);
    for (const auto& g : gens)
        for (const auto& v : log_vector(g))
            if (abs(v) > scale) scale = abs(v);
    if (d < tolerance(current_precision()) * scale) throw Error(Errc::SingularMatrix, "regulator vanishes");
    return d;
}

Real SUnitLattice::product_formula_defect() const {
    Real worst(0L);
    for (std::size_t j = 0; j < rank(); ++j) {
        Real s(0L);
        for (std::size_t w = 0; w < P_.n_sk(); ++w) s += logs_(w, j);
        if (abs(s) > worst) worst = abs(s);
    }
    return worst;
}

}  // namespace starkcheck
