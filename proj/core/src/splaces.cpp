#include "starkcheck/splaces.hpp"

#include "starkcheck/error.hpp"

#include <algorithm>
#include <set>

namespace starkcheck {

std::vector<int> PlaceSet::orbit(int v) const {
    std::vector<int> o;
    for (std::size_t w = 0; w < sk_places.size(); ++w)
        if (sk_places[w].over == v) o.push_back(static_cast<int>(w));
    return o;
}

std::vector<int> PlaceSet::finite_places() const {
    std::vector<int> f;
    for (std::size_t w = 0; w < sk_places.size(); ++w)
        if (sk_places[w].kind == PlaceKind::Finite) f.push_back(static_cast<int>(w));
    return f;
}

int PlaceSet::finite_row(int w) const {
    int row = 0;
    for (int i = 0; i < w; ++i)
        if (sk_places[static_cast<std::size_t>(i)].kind == PlaceKind::Finite) ++row;
    return sk_places[static_cast<std::size_t>(w)].kind == PlaceKind::Finite ? row : -1;
}

std::vector<std::string> validate_places(const PlaceSet& P, const AbelianGroup& G) {
    std::vector<std::string> issues;
    const std::size_t n = G.order(), nsk = P.n_sk(), ns = P.n_s();
    if (P.distinguished.size() != ns) issues.push_back("places: one distinguished place per place of S required");
    if (P.decomposition_groups.size() != ns) issues.push_back("places: one decomposition group per place of S required");
    if (P.galois_perm.size() != n) issues.push_back("places: galois_perm needs one row per automorphism");
    if (!issues.empty()) return issues;
    bool seen_finite = false;
    for (std::size_t v = 0; v < ns; ++v) {
        if (P.s_places[v].kind == PlaceKind::Finite) seen_finite = true;
        else if (seen_finite) issues.push_back("places: archimedean places of S must come first");
    }
    for (std::size_t w = 0; w < nsk; ++w) {
        const Place& pl = P.sk_places[w];
        if (pl.over < 0 || static_cast<std::size_t>(pl.over) >= ns) {
            issues.push_back("places: " + pl.label + " lies over no place of S");
            continue;
        }
        if (pl.kind != P.s_places[static_cast<std::size_t>(pl.over)].kind)
            issues.push_back("places: " + pl.label + " has a different kind than the place below");
        if (pl.kind == PlaceKind::Real && (pl.root < 0 || static_cast<std::size_t>(pl.root) >= P.roots.size()))
            issues.push_back("places: " + pl.label + " refers to a missing root");
        if (pl.kind == PlaceKind::Finite && !prime_power(pl.norm))
            issues.push_back("places: residue norm of " + pl.label + " is not a prime power");
    }
    for (std::size_t s = 0; s < n; ++s) {
        const auto& perm = P.galois_perm[s];
        if (perm.size() != nsk) {
            issues.push_back("places: galois_perm row " + G.labels[s] + " has the wrong length");
            continue;
        }
        std::set<int> img(perm.begin(), perm.end());
        if (img.size() != nsk || *img.begin() < 0 || *img.rbegin() >= static_cast<int>(nsk))
            issues.push_back("places: galois_perm row " + G.labels[s] + " is not a permutation");
        for (std::size_t w = 0; w < nsk && img.size() == nsk; ++w)
            if (P.sk_places[static_cast<std::size_t>(perm[w])].over != P.sk_places[w].over)
                issues.push_back("places: " + G.labels[s] + " moves " + P.sk_places[w].label + " out of its orbit");
    }
    if (!issues.empty()) return issues;
    for (std::size_t w = 0; w < nsk; ++w)
        if (P.galois_perm[0][w] != static_cast<int>(w)) issues.push_back("places: identity does not fix " + P.sk_places[w].label);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t w = 0; w < nsk; ++w) {
                int lhs = P.galois_perm[static_cast<std::size_t>(G.mul[a][b])][w];
                int rhs = P.galois_perm[a][static_cast<std::size_t>(P.galois_perm[b][w])];
                if (lhs != rhs) {
                    issues.push_back("places: galois_perm is not a group action");
                    a = b = n;
                    break;
                }
            }
    for (std::size_t v = 0; v < ns; ++v) {
        const int w0 = P.distinguished[v];
        if (w0 < 0 || static_cast<std::size_t>(w0) >= nsk || P.sk_places[static_cast<std::size_t>(w0)].over != static_cast<int>(v)) {
            issues.push_back("places: distinguished place of " + P.s_places[v].label + " is not above it");
            continue;
        }
        auto orb = P.orbit(static_cast<int>(v));
        std::set<int> reached;
        std::vector<int> stab;
        for (std::size_t s = 0; s < n; ++s) {
            int img = P.galois_perm[s][static_cast<std::size_t>(w0)];
            reached.insert(img);
            if (img == w0) stab.push_back(static_cast<int>(s));
        }
        if (reached.size() != orb.size()) issues.push_back("places: G is not transitive above " + P.s_places[v].label);
        auto dg = P.decomposition_groups[v];
        std::sort(dg.begin(), dg.end());
        if (dg != stab) issues.push_back("places: decomposition group of " + P.s_places[v].label + " is not the stabilizer of its distinguished place");
        if (orb.size() * stab.size() != n) issues.push_back("places: orbit-stabilizer fails above " + P.s_places[v].label);
    }
    return issues;
}

void refine_roots(PlaceSet& P, const Poly& p, long bits) {
    for (auto& r : P.roots) r = refine_root(p, r, bits);
}

void verify_place_action(const PlaceSet& P, const AbelianGroup& G) {
    const long bits = current_precision();
    const Real tol = tolerance(bits);
    for (std::size_t s = 0; s < G.order(); ++s) {
        const FieldElement& qinv = G.elements[static_cast<std::size_t>(G.inv[s])];
        for (std::size_t w = 0; w < P.n_sk(); ++w) {
            const Place& pl = P.sk_places[w];
            if (pl.kind != PlaceKind::Real) continue;
            Real image = nf_embed(qinv, P.roots[static_cast<std::size_t>(pl.root)], bits);
            int match = -1;
            for (std::size_t u = 0; u < P.n_sk(); ++u) {
                const Place& pu = P.sk_places[u];
                if (pu.kind != PlaceKind::Real) continue;
                Real scale = abs(image) + Real(1L);
                if (abs(image - P.roots[static_cast<std::size_t>(pu.root)].approx) < tol * scale) {
                    if (match >= 0) throw Error(Errc::ActionMismatch, "two places match the image of " + pl.label);
                    match = static_cast<int>(u);
                }
            }
            if (match < 0) throw Error(Errc::ActionMismatch, "image of " + pl.label + " under " + G.labels[s] + " is not a place of S_K");
            if (match != P.galois_perm[s][w])
                throw Error(Errc::ActionMismatch, G.labels[s] + " sends " + pl.label + " to " + P.sk_places[static_cast<std::size_t>(match)].label +
                                                      ", bundle says " + P.sk_places[static_cast<std::size_t>(P.galois_perm[s][w])].label);
        }
    }
}

std::optional<std::pair<mpz_class, unsigned long>> prime_power(const mpz_class& N) {
    if (N < 2) return std::nullopt;
    for (unsigned long f = static_cast<unsigned long>(mpz_sizeinbase(N.get_mpz_t(), 2)); f >= 1; --f) {
        mpz_class p;
        if (mpz_root(p.get_mpz_t(), N.get_mpz_t(), f) != 0 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0)
            return std::make_pair(p, f);
    }
    return std::nullopt;
}

std::optional<long> valuation_from_norm(const FieldElement& a, const PlaceSet& P, int w) {
    const Place& pl = P.sk_places[static_cast<std::size_t>(w)];
    if (pl.kind != PlaceKind::Finite) return std::nullopt;
    auto pf = prime_power(pl.norm);
    if (!pf) return std::nullopt;
    for (std::size_t u = 0; u < P.n_sk(); ++u) {
        if (static_cast<int>(u) == w || P.sk_places[u].kind != PlaceKind::Finite) continue;
        auto pu = prime_power(P.sk_places[u].norm);
        if (pu && pu->first == pf->first) return std::nullopt;
    }
    mpq_class nm = a.norm();
    if (nm == 0) return std::nullopt;
    long v = static_cast<long>(mpz_remove(mpz_class().get_mpz_t(), nm.get_num_mpz_t(), pf->first.get_mpz_t())) -
             static_cast<long>(mpz_remove(mpz_class().get_mpz_t(), nm.get_den_mpz_t(), pf->first.get_mpz_t()));
    if (v % static_cast<long>(pf->second) != 0) return std::nullopt;
    return v / static_cast<long>(pf->second);
}

Real log_abs(const FieldElement& a, const PlaceSet& P, int w, long bits, std::optional<long> ord) {
    const Place& pl = P.sk_places[static_cast<std::size_t>(w)];
    if (pl.kind == PlaceKind::Real) {
        // log|a| needs relative accuracy, so cancellation in Horner is met with more precision.
        if (a.is_zero()) throw Error(Errc::DivisionByZero, "log of zero at " + pl.label);
        RealRoot root = P.roots[static_cast<std::size_t>(pl.root)];
        const long caller = current_precision();
        long work = std::max(caller, bits) + 32;
        for (int attempt = 0; attempt < 6; ++attempt, work *= 2) {
            PrecisionScope scope(work);
            if (root.precision_bits < work) root = refine_root(a.field()->poly(), root, work);
            Real err;
            Real v;
            try {
                v = nf_embed(a, root, work, &err);
            } catch (const Error& e) {
                if (e.code() != Errc::PrecisionExhausted) throw;
                continue;
            }
            if (err < abs(v) * Real::pow2(-bits)) {
                Real out = log(abs(v));
                PrecisionScope back(caller);
                return Real(out.to_rational());
            }
        }
        throw Error(Errc::PrecisionExhausted, "cannot evaluate log|a| at " + pl.label + " to relative accuracy");
    }
    if (!ord) ord = valuation_from_norm(a, P, w);
    if (!ord) throw Error(Errc::ValuationUnavailable, "no valuation of the element at " + pl.label);
    return Real(-*ord) * log(Real(pl.norm));
}

int order_of_vanishing(const Character& chi, const PlaceSet& P) {
    if (chi.is_trivial()) return static_cast<int>(P.n_s()) - 1;
    int r = 0;
    for (const auto& gv : P.decomposition_groups)
        if (chi.contains_in_kernel(gv)) ++r;
    return r;
}

RankData rank_data(int r, const PlaceSet& P, const GroupPtr& G, const std::vector<Character>& chars) {
    const int ns = static_cast<int>(P.n_s());
    if (r < 1) throw Error(Errc::HypothesisViolated, "rank r must be at least 1");
    if (ns < r + 1) throw Error(Errc::HypothesisViolated, "|S| >= r + 1 fails");
    if (P.s_places.empty() || P.s_places[0].kind != PlaceKind::Real)
        throw Error(Errc::HypothesisViolated, "S must contain the archimedean places");
    for (int i = 0; i < r; ++i)
        if (P.decomposition_groups[static_cast<std::size_t>(i)].size() != 1)
            throw Error(Errc::HypothesisViolated, "place " + P.s_places[static_cast<std::size_t>(i)].label + " does not split completely");
    RankData rd;
    rd.r = r;
    std::vector<Character> prime;
    for (std::size_t k = 0; k < chars.size(); ++k) {
        const auto& chi = chars[k];
        bool in = !chi.is_trivial() && order_of_vanishing(chi, P) == r;
        if (in) rd.chars_rS.push_back(static_cast<int>(k));
        if (in || (chi.is_trivial() && ns == r + 1)) {
            rd.chars_rS_prime.push_back(static_cast<int>(k));
            prime.push_back(chi);
        }
    }
    rd.e_prime = prime.empty() ? QGroupRing(G) : rational_idempotent_sum(prime, G);
    return rd;
}

}  // namespace starkcheck
