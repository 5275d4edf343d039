#pragma once

#include "starkcheck/groupalg.hpp"
#include "starkcheck/numfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starkcheck {

enum class PlaceKind { Real, Finite };

struct Place {
    PlaceKind kind = PlaceKind::Real;
    std::string label;
    int root = -1;      // real: index into PlaceSet::roots
    mpz_class norm;     // finite: residue field size
    int over = -1;      // index of the place of k below
};

struct BasePlace {
    std::string label;
    PlaceKind kind = PlaceKind::Real;
};

struct PlaceSet {
    std::vector<RealRoot> roots;
    std::vector<BasePlace> s_places;
    std::vector<Place> sk_places;
    std::vector<int> distinguished;                      // per v_i, index into sk_places
    std::vector<std::vector<int>> decomposition_groups;  // per v_i, group element indices
    std::vector<std::vector<int>> galois_perm;           // [sigma][w] = index of w^sigma

    std::size_t n_s() const { return s_places.size(); }
    std::size_t n_sk() const { return sk_places.size(); }
    std::vector<int> orbit(int v) const;
    // Finite places in sk order; position = row of the valuation matrix.
    std::vector<int> finite_places() const;
    int finite_row(int w) const;
};

// Structural checks: orbits, stabilizers, permutation group law. Returns every issue found.
std::vector<std::string> validate_places(const PlaceSet& P, const AbelianGroup& G);

// Recomputes real-place permutations from the roots (w^s has root q_{s^-1}(xi_w)) and compares.
// Throws ActionMismatch.
void verify_place_action(const PlaceSet& P, const AbelianGroup& G);

// Refines every root to `bits`.
void refine_roots(PlaceSet& P, const Poly& p, long bits);

// p and f with N = p^f, or nullopt if N is not a prime power.
std::optional<std::pair<mpz_class, unsigned long>> prime_power(const mpz_class& N);

// ord_w(a) from the exact norm, valid for S-units when w is the only place of S_K above its prime.
std::optional<long> valuation_from_norm(const FieldElement& a, const PlaceSet& P, int w);

// Real place: log|tau_w(a)|. Finite: -ord_w(a) log N(w), with ord supplied or derived from the norm.
Real log_abs(const FieldElement& a, const PlaceSet& P, int w, long bits, std::optional<long> ord = std::nullopt);

// |S| - 1 for the trivial character, else #{v in S : G_v in ker chi}.
int order_of_vanishing(const Character& chi, const PlaceSet& P);

struct RankData {
    int r = 0;
    std::vector<int> chars_rS;        // indices into the character table
    std::vector<int> chars_rS_prime;
    QGroupRing e_prime;
};

// Throws HypothesisViolated naming the failing clause.
RankData rank_data(int r, const PlaceSet& P, const GroupPtr& G, const std::vector<Character>& chars);

}  // namespace starkcheck
