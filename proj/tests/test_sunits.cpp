#include "doctest.h"
#include "support.hpp"

#include <random>

using namespace starkcheck;

TEST_CASE("Galois action on the sqrt10 lattice") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    const SUnitLattice& L = *c.L;
    REQUIRE(L.rank() == 3);
    int s = c.label("s");
    // 3 - sqrt10 = -(3 + sqrt10)^-1, 2 is fixed, sqrt10 -> -sqrt10.
    CHECK(L.act(s, SUnit::basis(3, 0)) == SUnit{-1, {-1, 0, 0}});
    CHECK(L.act(s, SUnit::basis(3, 1)) == SUnit::basis(3, 1));
    CHECK(L.act(s, SUnit::basis(3, 2)) == SUnit{-1, {0, 0, 1}});
    for (int g = 0; g < 2; ++g)
        for (std::size_t j = 0; j < 3; ++j) {
            SUnit u = SUnit::basis(3, j);
            CHECK(L.to_field(L.act(g, u)) == L.to_field(u).apply_aut(c.b.group->elements[static_cast<std::size_t>(g)]));
        }
}

TEST_CASE("decompose inverts to_field") {
    PrecisionScope ps(128);
    for (const char* name : {"sqrt10", "sqrt3", "sqrt42"}) {
        CAPTURE(name);
        test::Context c(name);
        const SUnitLattice& L = *c.L;
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> d(-2, 2);
        for (int t = 0; t < 5; ++t) {
            SUnit u = SUnit::one(L.rank());
            u.sign = (t % 2) ? -1 : 1;
            for (auto& e : u.exps) e = d(rng);
            CHECK(L.decompose(L.to_field(u)) == u);
        }
    }
}

TEST_CASE("group law on S-units") {
    SUnit a{-1, {1, 2, -3}};
    SUnit b{1, {0, -2, 1}};
    CHECK((a * b) == SUnit{-1, {1, 0, -2}});
    CHECK((a / a).is_one());
    CHECK(a.pow(2) == SUnit{1, {2, 4, -6}});
    CHECK(a.inverse() * a == SUnit::one(3));
}

TEST_CASE("sqrt10 regulator and index") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    const SUnitLattice& L = *c.L;
    std::vector<SUnit> basis;
    for (std::size_t j = 0; j < 3; ++j) basis.push_back(SUnit::basis(3, j));
    Real reg = abs(L.regulator(basis, 0));
    Real want = Real(2L) * log(Real(3L) + sqrt(Real(10L))) * log(Real(2L)) * log(Real(5L));
    CHECK(abs(reg - want) < Real::pow2(-110));
    CHECK(L.sublattice_index(basis) == 1);
    std::vector<SUnit> sub = {basis[0].pow(2), basis[1], basis[2].pow(3)};
    CHECK(L.sublattice_index(sub) == 6);
}

TEST_CASE("logs, valuations and signs") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    const SUnitLattice& L = *c.L;
    SUnit two = SUnit::basis(3, 1);
    CHECK(L.valuation(two, 2) == 2);
    CHECK(L.valuation(two, 3) == 0);
    CHECK(abs(L.log_abs(two, 0) - log(Real(2L))) < Real::pow2(-120));
    SUnit conj{-1, {-1, 0, 0}};  // 3 - sqrt10
    CHECK(L.embedding_sign(conj, 0) == -1);
    CHECK(L.embedding_sign(conj, 1) == 1);
    for (std::size_t j = 0; j < 3; ++j) {
        Real s;
        for (const Real& x : L.log_vector(SUnit::basis(3, j))) s += x;
        CHECK(abs(s) < Real::pow2(-100));
    }
    CHECK(L.product_formula_defect() < Real::pow2(-100));
}
