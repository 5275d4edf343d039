#pragma once

#include "starkcheck/groupalg.hpp"
#include "starkcheck/linalg.hpp"
#include "starkcheck/splaces.hpp"

#include <optional>
#include <vector>

namespace starkcheck {

// sign * prod eta_j^exps[j]
struct SUnit {
    int sign = 1;
    std::vector<mpz_class> exps;

    static SUnit one(std::size_t t) { return SUnit{1, std::vector<mpz_class>(t, mpz_class(0))}; }
    static SUnit basis(std::size_t t, std::size_t j) {
        SUnit u = one(t);
        u.exps[j] = 1;
        return u;
    }
    bool is_one() const;
    SUnit& operator*=(const SUnit& o);
    SUnit inverse() const;
    SUnit pow(const mpz_class& e) const;
    bool operator==(const SUnit& o) const { return sign == o.sign && exps == o.exps; }
};

SUnit operator*(SUnit a, const SUnit& b);
SUnit operator/(SUnit a, const SUnit& b);

struct LatticeInput {
    std::vector<FieldElement> fundamental;
    long torsion_order = 2;
    IntMatrix valuations;  // finite places of S_K (in sk order) x t
};

class SUnitLattice {
public:
    // Builds log data at the current precision, then the Galois matrices by exact decomposition.
    SUnitLattice(GroupPtr G, PlaceSet P, LatticeInput in);

    const GroupPtr& group() const { return G_; }
    const PlaceSet& places() const { return P_; }
    std::size_t rank() const { return eta_.size(); }
    long torsion_order() const { return torsion_; }
    const std::vector<FieldElement>& fundamental() const { return eta_; }
    const RealMatrix& log_matrix() const { return logs_; }
    const IntMatrix& valuations() const { return val_; }
    const IntMatrix& galois_matrix(int s) const { return M_[static_cast<std::size_t>(s)]; }
    const std::vector<int>& galois_signs(int s) const { return sgn_[static_cast<std::size_t>(s)]; }

    // ords: valuations at the finite places (sk order), when known.
    SUnit decompose(const FieldElement& a, const std::optional<std::vector<long>>& ords = std::nullopt) const;
    FieldElement to_field(const SUnit& u) const;

    // u^sigma
    SUnit act(int sigma, const SUnit& u) const;
    // prod_sigma (u^sigma)^{a_sigma}
    SUnit act(const ZGroupRing& a, const SUnit& u) const;
    SUnit act(const QGroupRing& a, const SUnit& u) const;

    Real log_abs(const SUnit& u, int w) const;
    mpz_class valuation(const SUnit& u, int w) const;
    // Sign of tau_w(u) at a real place, from the exact sign and the signs of tau_w(eta_j).
    int embedding_sign(const SUnit& u, int w) const;
    // Full log vector over S_K.
    std::vector<Real> log_vector(const SUnit& u) const;

    // l_i(u) = -(1/|G_i|) sum_sigma log|u^sigma|_{w_i} sigma^-1
    CGroupRing ell_map(int i, const SUnit& u) const;
    // chi(l_i(u)) without forming the group-ring element.
    Complex ell_char(int i, const SUnit& u, const Character& chi) const;
    // det[chi(l_{I_s}(u_t))]
    Complex R_I_det(const std::vector<int>& I, const std::vector<SUnit>& units, const Character& chi) const;

    // [E_S : mu * <gens>], InfiniteIndex if not of full rank.
    mpz_class sublattice_index(const std::vector<SUnit>& gens) const;
    // |det| of the log matrix of t generators with row `drop` removed.
    Real regulator(const std::vector<SUnit>& gens, int drop = 0) const;

    // Largest |sum_w log|eta_j|_w| over j.
    Real product_formula_defect() const;

private:
    GroupPtr G_;
    PlaceSet P_;
    std::vector<FieldElement> eta_;
    std::vector<FieldElement> eta_inv_;
    long torsion_;
    IntMatrix val_;
    RealMatrix logs_;
    std::vector<std::vector<int>> real_sign_;  // [w][j], 0 for finite w
    std::vector<IntMatrix> M_;
    std::vector<std::vector<int>> sgn_;
};

}  // namespace starkcheck
