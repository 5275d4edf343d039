#pragma once

#include "starkcheck/artin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starkcheck {

struct LValue {
    std::vector<mpq_class> angles;  // character values on the group elements, in turns
    std::string re;
    std::string im = "0";
    int order = 0;
};

struct LValueTable {
    long stated_bits = 0;
    std::vector<LValue> values;

    const LValue* find(const Character& chi) const;
    Complex value(const Character& chi) const;  // MissingLValue
};

// Checks claimed orders against the place data and conjugate symmetry; returns issues.
std::vector<std::string> validate_lvalues(const LValueTable& t, const std::vector<Character>& chars, const PlaceSet& P);

// chi-bar(R_I(eps_{w_i1} ^ ... )) for chi != 1; the chi_1 case uses eps_{w_i} eps_{w_|S|}^-1.
Complex stark_regulator(const Character& chi, const ArtinSystem& A, const SUnitLattice& L);

// sum over `chars` of (L*/R)(chi) e_chi-bar, real parts only after the symmetry check.
std::vector<Real> beta_numeric(const std::vector<int>& chars, const std::vector<Character>& table, const LValueTable& lv,
                               const ArtinSystem& A, const SUnitLattice& L);

struct BetaResult {
    std::vector<Real> numeric;
    QGroupRing exact;
    mpz_class d;
    Real residual;
};

// Continued-fraction recognition of one real; nullopt when no convergent passes.
std::optional<mpq_class> recognize_rational(const Real& x, const mpz_class& max_den, long bits);

// RecognitionFailed with the offending coefficient.
BetaResult recognize_rationals(const std::vector<Real>& b, const GroupPtr& G, const mpz_class& max_den, long bits);

// L*(chi) = A(chi) R(chi) with A(chi) = sum_s b_s chi-bar(s), for each character in `chars`.
LValueTable derive_lvalues(const QGroupRing& beta, const std::vector<int>& chars, const std::vector<Character>& table,
                           const ArtinSystem& A, const SUnitLattice& L, const PlaceSet& P);

}  // namespace starkcheck
