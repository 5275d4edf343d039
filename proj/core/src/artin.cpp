#include "starkcheck/artin.hpp"

#include "starkcheck/error.hpp"

namespace starkcheck {

SUnit find_beta_candidate(int i, const SUnitLattice& L, long n0) {
    const PlaceSet& P = L.places();
    const std::size_t t = L.rank();
    const int wi = P.distinguished[static_cast<std::size_t>(i)];
    RealMatrix A(t, t);
    std::size_t row = 0;
    for (std::size_t w = 0; w < P.n_sk(); ++w) {
        if (static_cast<int>(w) == wi) continue;
        for (std::size_t j = 0; j < t; ++j) A(row, j) = L.log_matrix()(w, j);
        ++row;
    }
    std::vector<Real> rhs(t, Real(-n0));
    std::vector<Real> x;
    try {
        x = solve(std::move(A), std::move(rhs));
    } catch (const Error&) {
        throw Error(Errc::SingularSubmatrix, "log matrix without the distinguished place is singular");
    }
    SUnit b = SUnit::one(t);
    for (std::size_t j = 0; j < t; ++j) b.exps[j] = x[j].round();
    return b;
}

Real dominance_slack(int i, const SUnitLattice& L, const SUnit& beta) {
    const PlaceSet& P = L.places();
    const int wi = P.distinguished[static_cast<std::size_t>(i)];
    bool first = true;
    Real worst(0L);
    for (std::size_t w = 0; w < P.n_sk(); ++w) {
        if (static_cast<int>(w) == wi) continue;
        Real v = L.log_abs(beta, static_cast<int>(w));
        if (first || v > worst) worst = v;
        first = false;
    }
    return worst;
}

std::pair<SUnit, long> find_beta(int i, const SUnitLattice& L, const ArtinOptions& opt) {
    const Real margin(opt.margin);
    long n0 = 1;
    while (n0 <= opt.n0_cap) {
        SUnit b = find_beta_candidate(i, L, n0);
        if (dominance_slack(i, L, b) < -margin) return {b, n0};
        if (opt.schedule == N0Schedule::Linear && n0 < 64) ++n0;
        else n0 *= 2;
    }
    throw Error(Errc::DominanceFailed, "no beta found for place " + L.places().s_places[static_cast<std::size_t>(i)].label);
}

namespace {

mpz_class orbit_coefficient(const std::vector<mpz_class>& n, const PlaceSet& P, int v) {
    return n[static_cast<std::size_t>(P.distinguished[static_cast<std::size_t>(v)])];
}

SUnit relation_product(const std::vector<SUnit>& eps, const std::vector<mpz_class>& n) {
    SUnit r = SUnit::one(eps.front().exps.size());
    for (std::size_t w = 0; w < eps.size(); ++w) r *= eps[w].pow(n[w]);
    return r;
}

}  // namespace

ArtinSystem build_artin_system(const SUnitLattice& L, const ArtinOptions& opt) {
    const PlaceSet& P = L.places();
    const GroupPtr& G = L.group();
    const std::size_t ns = P.n_s(), nsk = P.n_sk(), t = L.rank();
    ArtinSystem A;
    A.normalization = opt.normalization;
    if (opt.normalization != "none" && opt.normalization != "unit")
        throw Error(Errc::SchemaError, "alpha_normalization must be none or unit");

    for (std::size_t i = 0; i < ns; ++i) {
        if (opt.betas) {
            if (opt.betas->size() != ns) throw Error(Errc::SchemaError, "one pinned beta per place of S required");
            A.betas.push_back((*opt.betas)[i]);
            A.n0.push_back(0);
        } else {
            auto [b, n0] = find_beta(static_cast<int>(i), L, opt);
            A.betas.push_back(b);
            A.n0.push_back(n0);
        }
    }

    A.eps.assign(nsk, SUnit());
    std::vector<bool> set(nsk, false);
    for (std::size_t i = 0; i < ns; ++i) {
        SUnit gamma = L.act(ZGroupRing::norm_element(G, P.decomposition_groups[i]), A.betas[i]);
        const int wi = P.distinguished[i];
        for (std::size_t s = 0; s < G->order(); ++s) {
            const std::size_t w = static_cast<std::size_t>(P.galois_perm[s][static_cast<std::size_t>(wi)]);
            SUnit e = L.act(static_cast<int>(s), gamma);
            if (set[w] && !(A.eps[w] == e)) throw Error(Errc::ActionMismatch, "gamma is not fixed by its decomposition group");
            A.eps[w] = e;
            set[w] = true;
        }
    }

    IntMatrix E(nsk, t);
    for (std::size_t w = 0; w < nsk; ++w)
        for (std::size_t j = 0; j < t; ++j) E(w, j) = A.eps[w].exps[j];
    IntMatrix K = left_kernel(E);
    if (K.rows != 1) throw Error(Errc::KernelRankNotOne, "relations among the eps_w have rank " + std::to_string(K.rows));
    std::vector<mpz_class> n = K.row(0);

    for (std::size_t w = 0; w < nsk; ++w)
        if (n[w] != orbit_coefficient(n, P, P.sk_places[w].over))
            throw Error(Errc::KernelRankNotOne, "relation is not constant on Galois orbits");
    if (relation_product(A.eps, n).sign < 0) {
        for (auto& v : n) v *= 2;
        A.kernel_doubled = true;
    }
    int pos = 0, neg = 0;
    for (std::size_t v = 0; v < ns; ++v) {
        int s = sgn(orbit_coefficient(n, P, static_cast<int>(v)));
        pos += s > 0;
        neg += s < 0;
    }
    if (neg > pos || (neg == pos && sgn(orbit_coefficient(n, P, 0)) < 0))
        for (auto& v : n) v = -v;
    for (std::size_t v = 0; v < ns; ++v) {
        if (orbit_coefficient(n, P, static_cast<int>(v)) >= 0) continue;
        A.inverted_orbits.push_back(static_cast<int>(v));
        for (int w : P.orbit(static_cast<int>(v))) {
            A.eps[static_cast<std::size_t>(w)] = A.eps[static_cast<std::size_t>(w)].inverse();
            n[static_cast<std::size_t>(w)] = -n[static_cast<std::size_t>(w)];
        }
    }
    for (std::size_t v = 0; v < ns; ++v) A.alpha.push_back(orbit_coefficient(n, P, static_cast<int>(v)));

    if (opt.normalization == "unit") {
        for (std::size_t w = 0; w < nsk; ++w) A.eps[w] = A.eps[w].pow(A.alpha[static_cast<std::size_t>(P.sk_places[w].over)]);
        for (auto& a : A.alpha) a = 1;
    }

    std::vector<SUnit> gens;
    for (std::size_t w = 0; w + 1 < nsk; ++w) gens.push_back(A.eps[w] / A.eps[nsk - 1]);
    A.m = L.sublattice_index(gens);
    return A;
}

bool CheckList::ok() const {
    for (const auto& [name, good] : items)
        if (!good) return false;
    return true;
}

std::vector<std::string> CheckList::failures() const {
    std::vector<std::string> f;
    for (const auto& [name, good] : items)
        if (!good) f.push_back(name);
    return f;
}

mpz_class s_K(const ArtinSystem& A, const PlaceSet& P, std::size_t group_order) {
    mpz_class s = 0;
    for (std::size_t v = 0; v < P.n_s(); ++v)
        s += A.alpha[v] * static_cast<long>(group_order / P.decomposition_groups[v].size());
    return s;
}

RealMatrix dominance_matrix(const ArtinSystem& A, const SUnitLattice& L, int drop) {
    const std::size_t nsk = L.places().n_sk();
    RealMatrix a(nsk - 1, nsk - 1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < nsk; ++i) {
        if (static_cast<int>(i) == drop) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < nsk; ++j) {
            if (static_cast<int>(j) == drop) continue;
            a(r, c++) = L.log_abs(A.eps[i], static_cast<int>(j));
        }
        ++r;
    }
    return a;
}

bool satisfies_dominance_hypothesis(const RealMatrix& a) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        Real sum(0L);
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (i != j && a(i, j).sign() >= 0) return false;
            sum += a(i, j);
        }
        if (sum.sign() <= 0) return false;
    }
    return true;
}

CheckList verify_artin_system(const ArtinSystem& A, const SUnitLattice& L) {
    CheckList c;
    const PlaceSet& P = L.places();
    const GroupPtr& G = L.group();
    const std::size_t nsk = P.n_sk(), t = L.rank();

    bool equivariant = true;
    for (std::size_t s = 0; s < G->order() && equivariant; ++s)
        for (std::size_t w = 0; w < nsk; ++w)
            if (!(L.act(static_cast<int>(s), A.eps[w]) == A.eps[static_cast<std::size_t>(P.galois_perm[s][w])])) {
                equivariant = false;
                break;
            }
    c.add("equivariance", equivariant);

    std::vector<mpz_class> n(nsk);
    for (std::size_t w = 0; w < nsk; ++w) n[w] = A.alpha[static_cast<std::size_t>(P.sk_places[w].over)];
    c.add("relation", relation_product(A.eps, n).is_one());

    bool nonneg = true, some_pos = false;
    for (const auto& a : A.alpha) {
        nonneg = nonneg && a >= 0;
        some_pos = some_pos || a > 0;
    }
    c.add("alpha_nonnegative", nonneg && some_pos);

    IntMatrix E(nsk, t);
    for (std::size_t w = 0; w < nsk; ++w)
        for (std::size_t j = 0; j < t; ++j) E(w, j) = A.eps[w].exps[j];
    c.add("single_relation", smith_normal_form(E).rank == t);
    c.add("s_K_nonzero", s_K(A, P, G->order()) != 0);

    std::vector<SUnit> gens;
    for (std::size_t w = 0; w + 1 < nsk; ++w) gens.push_back(A.eps[w] / A.eps[nsk - 1]);
    bool index_ok = false;
    try {
        index_ok = L.sublattice_index(gens) == A.m;
    } catch (const Error&) {
    }
    c.add("index", index_ok);

    bool dominant = true;
    for (std::size_t w = 0; w < nsk && dominant; ++w)
        for (std::size_t u = 0; u < nsk; ++u) {
            int s = L.log_abs(A.eps[w], static_cast<int>(u)).sign();
            if ((u == w && s <= 0) || (u != w && s >= 0)) {
                dominant = false;
                break;
            }
        }
    c.add("dominance", dominant);
    c.add("dominance_matrix", satisfies_dominance_hypothesis(dominance_matrix(A, L, static_cast<int>(nsk) - 1)));
    return c;
}

}  // namespace starkcheck
