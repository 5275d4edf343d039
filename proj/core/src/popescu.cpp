#include "starkcheck/popescu.hpp"

#include "starkcheck/error.hpp"

namespace starkcheck {

ZGroupRing DualFunctional::apply(const GroupPtr& G, const SUnit& u) const {
    ZGroupRing r(G);
    for (std::size_t s = 0; s < rows.rows; ++s)
        for (std::size_t j = 0; j < rows.cols; ++j) r.c[s] += rows(s, j) * u.exps[j];
    return r;
}

std::vector<DualFunctional> dual_functionals(const SUnitLattice& L) {
    const GroupPtr& G = L.group();
    const std::size_t t = L.rank(), n = G->order();
    std::vector<DualFunctional> out;
    for (std::size_t i = 0; i < t; ++i) {
        DualFunctional f;
        f.index = static_cast<int>(i);
        f.rows = IntMatrix(n, t);
        // coefficient at s is eta_i^*(s^-1 u), i.e. row i of M_{s^-1}
        for (std::size_t s = 0; s < n; ++s) {
            const IntMatrix& M = L.galois_matrix(G->inv[s]);
            for (std::size_t j = 0; j < t; ++j) f.rows(s, j) = M(i, j);
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool functionals_equivariant(const std::vector<DualFunctional>& phis, const SUnitLattice& L) {
    const GroupPtr& G = L.group();
    for (const auto& phi : phis)
        for (std::size_t j = 0; j < L.rank(); ++j) {
            SUnit e = SUnit::basis(L.rank(), j);
            ZGroupRing base = phi.apply(G, e);
            if (base.c[0] != (static_cast<int>(j) == phi.index ? 1 : 0)) return false;
            for (std::size_t s = 0; s < G->order(); ++s) {
                ZGroupRing lhs = phi.apply(G, L.act(static_cast<int>(s), e));
                ZGroupRing rhs = ZGroupRing::basis(G, static_cast<int>(s)) * base;
                if (!(lhs == rhs)) return false;
            }
        }
    return true;
}

std::vector<SUnit> contraction_inputs(const ArtinSystem& A, const SUnitLattice& L, int r) {
    const PlaceSet& P = L.places();
    const std::size_t ns = P.n_s();
    auto eps = [&](std::size_t i) { return A.eps[static_cast<std::size_t>(P.distinguished[i])]; };
    if (r == 1) return {ns >= 3 ? eps(0) : eps(0) / eps(1)};
    if (r == 2) {
        if (ns >= 4) return {eps(0), eps(1)};
        return {eps(0) / eps(2), eps(1) / eps(2)};
    }
    throw Error(Errc::UnsupportedRank, "contraction implemented for r = 1, 2 only");
}

SUnit contract(const DualFunctional* phi, const std::vector<SUnit>& inputs, const SUnitLattice& L, int r) {
    if (r == 1) return inputs.at(0);
    if (r != 2) throw Error(Errc::UnsupportedRank, "contraction implemented for r = 1, 2 only");
    const GroupPtr& G = L.group();
    const SUnit& a = inputs.at(0);
    const SUnit& b = inputs.at(1);
    return L.act(phi->apply(G, a), b) / L.act(phi->apply(G, b), a);
}

void gamma_delta(PopescuEntry& e, const QGroupRing& beta_e, const mpz_class& d, const SUnitLattice& L) {
    QGroupRing scaled = beta_e * mpq_class(L.torsion_order() * d);
    e.gamma = L.act(to_integral(scaled), e.u);
    e.divisible_by_d = true;
    e.delta = e.gamma;
    for (auto& x : e.delta.exps) {
        if (x % d != 0) e.divisible_by_d = false;
        mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    e.square_test = true;
    for (const auto& x : e.delta.exps)
        if (mpz_odd_p(x.get_mpz_t())) e.square_test = false;
}

bool abelian_test(const SUnit& delta, int sigma_gen, const SUnitLattice& L) {
    const GroupPtr& G = L.group();
    if (!G->is_cyclic()) throw Error(Errc::NonCyclicGroup, "the square criterion needs a cyclic Galois group");
    SUnit x = L.act(sigma_gen, delta) / delta;
    bool even = true;
    for (const auto& v : x.exps)
        if (mpz_odd_p(v.get_mpz_t())) even = false;
    // tau_w(delta^s) = tau_{w^{s^-1}}(delta): the sign at a real place must agree with the exact one.
    const PlaceSet& P = L.places();
    for (std::size_t w = 0; w < P.n_sk(); ++w) {
        if (P.sk_places[w].kind != PlaceKind::Real) continue;
        int wv = P.galois_perm[static_cast<std::size_t>(G->inv[static_cast<std::size_t>(sigma_gen)])][w];
        int s = L.embedding_sign(delta, wv) * L.embedding_sign(delta, static_cast<int>(w));
        if (s != L.embedding_sign(x, static_cast<int>(w))) throw Error(Errc::ActionMismatch, "sign of delta^(s-1) is inconsistent");
        break;
    }
    return even && x.sign == 1;
}

PopescuVerdict popescu_verdict(const ArtinSystem& A, const SUnitLattice& L, const QGroupRing& beta_e, const mpz_class& d, int r) {
    PopescuVerdict v;
    const GroupPtr& G = L.group();
    auto inputs = contraction_inputs(A, L, r);
    std::vector<DualFunctional> phis;
    if (r == 2) phis = dual_functionals(L);
    const std::size_t count = r == 1 ? 1 : phis.size();
    const int gen = G->generators.empty() ? 0 : G->generators.front();
    bool all = true, determined = true;
    for (std::size_t i = 0; i < count; ++i) {
        PopescuEntry e;
        e.index = static_cast<int>(i);
        e.u = contract(r == 2 ? &phis[i] : nullptr, inputs, L, r);
        gamma_delta(e, beta_e, d, L);
        if (G->is_cyclic()) e.abelian_test = abelian_test(e.delta, gen, L);
        else determined = false;
        bool ok = e.divisible_by_d && (!e.abelian_test || *e.abelian_test);
        if (!ok) v.failing.push_back(static_cast<int>(i));
        all = all && ok;
        v.entries.push_back(std::move(e));
    }
    if (!all) v.overall = false;
    else if (determined) v.overall = true;
    return v;
}

}  // namespace starkcheck
