#include "doctest.h"
#include "support.hpp"

#include "starkcheck/splaces.hpp"

using namespace starkcheck;

TEST_CASE("fixture place sets validate") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        FieldBundle b = test::fixture(name);
        CHECK(validate_places(b.places, *b.group).empty());
        PrecisionScope ps(128);
        PlaceSet P = b.places;
        refine_roots(P, b.field->poly(), 160);
        CHECK_NOTHROW(verify_place_action(P, *b.group));
    }
}

TEST_CASE("orbits and finite rows") {
    FieldBundle b = test::fixture("sqrt3");
    const PlaceSet& P = b.places;
    CHECK(P.n_s() == 4);
    CHECK(P.n_sk() == 8);
    CHECK(P.orbit(0) == std::vector<int>{0, 1, 2});
    CHECK(P.orbit(1) == std::vector<int>{3, 4, 5});
    CHECK(P.orbit(2) == std::vector<int>{6});
    CHECK(P.finite_places() == std::vector<int>{6, 7});
    CHECK(P.finite_row(7) == 1);
    CHECK(P.finite_row(0) == -1);
}

TEST_CASE("a wrong permutation is caught by the embedding check") {
    PrecisionScope ps(128);
    FieldBundle b = test::fixture("sqrt3");
    PlaceSet P = b.places;
    refine_roots(P, b.field->poly(), 160);
    int s1 = b.group->index_of_label("s1"), s2 = b.group->index_of_label("s2");
    std::swap(P.galois_perm[static_cast<std::size_t>(s1)], P.galois_perm[static_cast<std::size_t>(s2)]);
    try {
        verify_place_action(P, *b.group);
        FAIL("expected ActionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ActionMismatch);
    }
}

TEST_CASE("structural problems are listed") {
    FieldBundle b = test::fixture("sqrt10");
    PlaceSet P = b.places;
    P.galois_perm[1] = {0, 0, 2, 3};
    P.sk_places[2].norm = 6;
    auto issues = validate_places(P, *b.group);
    CHECK(issues.size() >= 2);
}

TEST_CASE("prime powers") {
    auto pp = prime_power(mpz_class(25));
    REQUIRE(pp);
    CHECK(pp->first == 5);
    CHECK(pp->second == 2);
    CHECK(prime_power(mpz_class(397))->second == 1);
    CHECK_FALSE(prime_power(mpz_class(12)));
    CHECK_FALSE(prime_power(mpz_class(1)));
}

TEST_CASE("orders of vanishing") {
    FieldBundle b = test::fixture("sqrt3");
    auto chars = character_table(*b.group);
    CHECK(order_of_vanishing(chars[0], b.places) == 3);
    CHECK(order_of_vanishing(chars[1], b.places) == 2);
    CHECK(order_of_vanishing(chars[2], b.places) == 2);

    FieldBundle c = test::fixture("sqrt10");
    auto ct = character_table(*c.group);
    CHECK(order_of_vanishing(ct[0], c.places) == 2);
    CHECK(order_of_vanishing(ct[1], c.places) == 1);
}

TEST_CASE("rank data and hypotheses") {
    PrecisionScope ps(128);
    FieldBundle b = test::fixture("sqrt3");
    auto chars = character_table(*b.group);
    RankData rd = rank_data(2, b.places, b.group, chars);
    CHECK(rd.chars_rS == std::vector<int>{1, 2});
    CHECK(rd.chars_rS_prime == std::vector<int>{1, 2});
    CHECK(rd.e_prime.c == std::vector<mpq_class>{mpq_class(2, 3), mpq_class(-1, 3), mpq_class(-1, 3)});

    // Only two real places split completely, so r = 3 violates the hypotheses.
    try {
        (void)rank_data(3, b.places, b.group, chars);
        FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::HypothesisViolated);
    }
}

TEST_CASE("valuations from norms and honest logs") {
    PrecisionScope ps(160);
    FieldBundle b = test::fixture("sqrt10");
    PlaceSet P = b.places;
    refine_roots(P, b.field->poly(), 192);
    FieldElement two(b.field, mpq_class(2));
    FieldElement s = FieldElement::x(b.field);
    CHECK(valuation_from_norm(two, P, 2) == 2);
    CHECK(valuation_from_norm(s, P, 2) == 1);
    CHECK(valuation_from_norm(s, P, 3) == 1);
    Real l = log_abs(two, P, 2, 128);
    CHECK(abs(l + Real(2L) * log(Real(2L))) < Real::pow2(-120));
    Real r = log_abs(s + FieldElement(b.field, mpq_class(3)), P, 1, 128);
    CHECK(abs(r + log(sqrt(Real(10L)) + Real(3L))) < Real::pow2(-120));
}
