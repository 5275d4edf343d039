#pragma once

#include "starkcheck/groupalg.hpp"
#include "starkcheck/linalg.hpp"
#include "starkcheck/splaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starkcheck {

// Cl = sum Z/divisors[i]; classes are column vectors, sigma acts by action[sigma] * x.
struct ClassGroupData {
    std::vector<mpz_class> divisors;
    std::vector<IntMatrix> action;
    std::vector<std::vector<mpz_class>> place_classes;  // per finite place of S_K, in sk order

    mpz_class order() const;
    bool trivial() const { return divisors.empty(); }
};

// Group law mod the divisors, well-definedness, compatibility of place classes with galois_perm.
std::vector<std::string> validate_class_group(const ClassGroupData& C, const AbelianGroup& G, const PlaceSet* P = nullptr);

bool annihilates(const ZGroupRing& a, const ClassGroupData& C);

// Cl_S = Cl / <classes of the finite places of S_K>. ActionNotWellDefined if the induced action fails.
ClassGroupData s_quotient(const ClassGroupData& C, const AbelianGroup& G);

struct BurnsVerdict {
    bool integral = false;         // w_K m^r beta e' in Z[G]
    std::optional<int> statement;  // lowest of 1..4 that holds
    std::vector<bool> statements;  // the four outcomes
    bool monotone = true;          // k holds => all later hold
    bool d_divides_2m = false;
    bool d_divides_2m2 = false;
    bool twisted_ok = false;
    bool extra_2m_on_cl_s = false;  // w_K m beta e' annihilates Cl_S (reported only)
    bool operator==(const BurnsVerdict&) const = default;
};

// Exact multiple of beta e' annihilates C; false when the multiple is not integral.
bool element_annihilates(const QGroupRing& beta_e, const mpz_class& factor, const ClassGroupData& C);

BurnsVerdict classify_statements(const QGroupRing& beta_e, const mpz_class& d, const mpz_class& m, long w_K, int r,
                                 const ClassGroupData& C, const ClassGroupData& C_S);

// (s - 1) w_K m^r beta e' annihilates Cl(K) for the given nontrivial s.
bool twisted_annihilation(const QGroupRing& beta_e, const mpz_class& m, long w_K, int r, int sigma, const ClassGroupData& C);

}  // namespace starkcheck
