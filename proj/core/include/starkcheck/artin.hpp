#pragma once

#include "starkcheck/sunits.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starkcheck {

enum class N0Schedule {
    Linear,    // 1, 2, ..., 64, then doubling
    Doubling,  // 1, 2, 4, ...
};

struct ArtinOptions {
    // Pinned beta_i, one per place of S; found by search when absent.
    std::optional<std::vector<SUnit>> betas;
    // "none" keeps eps_w as built; "unit" replaces eps_w by eps_w^{n_v} so alpha = sum T_v.
    std::string normalization = "none";
    mpq_class margin = mpq_class(1, 16);
    N0Schedule schedule = N0Schedule::Linear;
    long n0_cap = 1L << 20;
};

struct ArtinSystem {
    std::vector<SUnit> eps;            // per place of S_K
    std::vector<mpz_class> alpha;      // n_v per place of S
    mpz_class m;
    std::vector<SUnit> betas;
    std::vector<long> n0;              // 0 where beta was pinned
    bool kernel_doubled = false;       // primitive relation had sign -1
    std::vector<int> inverted_orbits;  // places of S whose orbit was inverted
    std::string normalization;
};

// Solves A_s x = n0 (-1, ..., -1) with row w_i of the log matrix removed and rounds.
SUnit find_beta_candidate(int i, const SUnitLattice& L, long n0);
// max_{w != w_i} log|beta|_w, which must be below -margin.
Real dominance_slack(int i, const SUnitLattice& L, const SUnit& beta);
// Searches n0 along the schedule; DominanceFailed at the cap.
std::pair<SUnit, long> find_beta(int i, const SUnitLattice& L, const ArtinOptions& opt);

ArtinSystem build_artin_system(const SUnitLattice& L, const ArtinOptions& opt = {});

struct CheckList {
    std::vector<std::pair<std::string, bool>> items;
    void add(std::string name, bool ok) { items.emplace_back(std::move(name), ok); }
    bool ok() const;
    std::vector<std::string> failures() const;
};

// Exact checks (equivariance, relation, orientation, s_K(alpha), index) and numeric ones
// (dominance and the determinant-lemma hypotheses).
CheckList verify_artin_system(const ArtinSystem& A, const SUnitLattice& L);

// a_ij = log|eps_{w_i}|_{w_j} over all places but `drop`.
RealMatrix dominance_matrix(const ArtinSystem& A, const SUnitLattice& L, int drop);
// Off-diagonal entries negative and row sums positive.
bool satisfies_dominance_hypothesis(const RealMatrix& a);

mpz_class s_K(const ArtinSystem& A, const PlaceSet& P, std::size_t group_order);

}  // namespace starkcheck
