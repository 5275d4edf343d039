#pragma once

#include "starkcheck/artin.hpp"
#include "starkcheck/splaces.hpp"

#include <optional>
#include <vector>

namespace starkcheck {

// u -> sum_s eta_i^*(s^-1 u) s, stored as one row functional on exponent vectors per group element.
struct DualFunctional {
    int index = 0;
    IntMatrix rows;  // |G| x t

    ZGroupRing apply(const GroupPtr& G, const SUnit& u) const;
};

std::vector<DualFunctional> dual_functionals(const SUnitLattice& L);
// value(s u) = s value(u) for every functional, generator and group element.
bool functionals_equivariant(const std::vector<DualFunctional>& phis, const SUnitLattice& L);

// The pair (a, b) fed to the contraction, or just a for r = 1.
std::vector<SUnit> contraction_inputs(const ArtinSystem& A, const SUnitLattice& L, int r);

// phi(a) b - phi(b) a for r = 2; a itself for r = 1. UnsupportedRank otherwise.
SUnit contract(const DualFunctional* phi, const std::vector<SUnit>& inputs, const SUnitLattice& L, int r);

struct PopescuEntry {
    int index = 0;
    SUnit u;
    SUnit gamma;
    bool divisible_by_d = false;
    SUnit delta;
    bool square_test = false;
    std::optional<bool> abelian_test;  // empty when G is not cyclic
    bool operator==(const PopescuEntry&) const = default;
};

struct PopescuVerdict {
    std::vector<PopescuEntry> entries;
    std::optional<bool> overall;
    std::vector<int> failing;
    bool operator==(const PopescuVerdict&) const = default;
};

// (w_K d beta e')·u and its d-th root on exponents.
void gamma_delta(PopescuEntry& e, const QGroupRing& beta_e, const mpz_class& d, const SUnitLattice& L);

// delta^{s-1} is a square in K^x. NonCyclicGroup when G is not cyclic.
bool abelian_test(const SUnit& delta, int sigma_gen, const SUnitLattice& L);

PopescuVerdict popescu_verdict(const ArtinSystem& A, const SUnitLattice& L, const QGroupRing& beta_e, const mpz_class& d, int r);

}  // namespace starkcheck
