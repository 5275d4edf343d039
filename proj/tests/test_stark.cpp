#include "doctest.h"
#include "support.hpp"

#include "starkcheck/stark.hpp"

#include <random>

using namespace starkcheck;

namespace {

// L*(chi) for the cubic characters of Q(sqrt3), from PARI's lfun on the ray class group.
const char* kSqrt3LStar = "20.369355187034937621427633920789827647571967851396958325936839322732284529913537";

std::vector<int> all_chars(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return v;
}

}  // namespace

TEST_CASE("recognition of rationals") {
    PrecisionScope ps(128);
    CHECK(recognize_rational(Real(mpq_class(43, 1393)), 1000000, 128) == mpq_class(43, 1393));
    CHECK(recognize_rational(Real(mpq_class(-129, 512)), 1000, 128) == mpq_class(-129, 512));
    CHECK(recognize_rational(Real(0L), 10, 128) == mpq_class(0));
    CHECK(recognize_rational(Real(7L), 10, 128) == mpq_class(7));
    CHECK_FALSE(recognize_rational(Real::pi(), mpz_class(1000000), 128));
    // Denominator above the bound.
    CHECK_FALSE(recognize_rational(Real(mpq_class(1, 1009)), 1000, 128));
    // A small perturbation is tolerated, a large one is not.
    Real x = Real(mpq_class(5, 7)) + Real::pow2(-100);
    CHECK(recognize_rational(x, 1000, 128) == mpq_class(5, 7));
    Real y = Real(mpq_class(5, 7)) + Real::pow2(-40);
    CHECK_FALSE(recognize_rational(y, 1000, 128));
}

TEST_CASE("recognize_rationals reports the common denominator") {
    PrecisionScope ps(128);
    FieldBundle b = test::fixture("sqrt3");
    std::vector<Real> v = {Real(mpq_class(43, 1393)), Real(mpq_class(-19, 1393)), Real(mpq_class(-24, 1393))};
    BetaResult r = recognize_rationals(v, b.group, 100000000, 128);
    CHECK(r.d == 1393);
    CHECK(r.exact.c == std::vector<mpq_class>{mpq_class(43, 1393), mpq_class(-19, 1393), mpq_class(-24, 1393)});
    v[1] = Real::pi();
    try {
        (void)recognize_rationals(v, b.group, 100000000, 128);
        FAIL("expected RecognitionFailed");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RecognitionFailed);
    }
}

TEST_CASE("sqrt10 beta from the supplied L-values") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    const LValueTable& lv = *c.b.lvalues;
    auto num = beta_numeric(all_chars(c.chars.size()), c.chars, lv, c.A, *c.L);
    BetaResult full = recognize_rationals(num, c.b.group, 4 * c.A.m * c.A.m, 128);
    int s = c.label("s");
    CHECK(full.exact[0] == mpq_class(-129, 512));
    CHECK(full.exact[s] == mpq_class(127, 512));

    RankData rd = rank_data(1, c.L->places(), c.b.group, c.chars);
    BetaResult e = recognize_rationals(beta_numeric(rd.chars_rS_prime, c.chars, lv, c.A, *c.L), c.b.group, 4 * c.A.m * c.A.m, 128);
    CHECK(e.exact[0] == mpq_class(-1, 4));
    CHECK(e.exact[s] == mpq_class(1, 4));
    CHECK(e.d == 4);
    CHECK(full.exact * rd.e_prime == e.exact);
}

TEST_CASE("stark regulator is nonzero for each character") {
    PrecisionScope ps(128);
    for (const char* name : {"sqrt10", "sqrt3", "sqrt42"}) {
        CAPTURE(name);
        test::Context c(name);
        for (const auto& chi : c.chars) CHECK(abs(stark_regulator(chi, c.A, *c.L)) > Real::pow2(-20));
    }
}

TEST_CASE("derived sqrt3 L-values agree with an independent computation") {
    PrecisionScope ps(320);
    test::Context c("sqrt3", 320);
    RankData rd = rank_data(2, c.L->places(), c.b.group, c.chars);
    QGroupRing beta(c.b.group);
    beta[c.label("id")] = mpq_class(43, 1393);
    beta[c.label("s1")] = mpq_class(-19, 1393);
    beta[c.label("s2")] = mpq_class(-24, 1393);
    LValueTable t = derive_lvalues(beta, rd.chars_rS_prime, c.chars, c.A, *c.L, c.L->places());
    REQUIRE(t.values.size() == 2);
    Real oracle{std::string_view(kSqrt3LStar)};
    for (const auto& v : t.values) {
        CHECK(v.order == 2);
        Real re{std::string_view(v.re)}, im{std::string_view(v.im)};
        CHECK(abs(re - oracle) < Real::pow2(-250));
        CHECK(abs(im) < Real::pow2(-250));
    }
    // Round trip through beta_numeric.
    auto num = beta_numeric(rd.chars_rS_prime, c.chars, t, c.A, *c.L);
    BetaResult r = recognize_rationals(num, c.b.group, 4 * c.A.m * c.A.m, 256);
    CHECK(r.exact == beta);
}

TEST_CASE("L-value tables are validated") {
    FieldBundle b = test::fixture("sqrt3");
    auto chars = character_table(*b.group);
    LValueTable t = *b.lvalues;
    CHECK(validate_lvalues(t, chars, b.places).empty());
    t.values[0].order = 1;
    CHECK_FALSE(validate_lvalues(t, chars, b.places).empty());

    PrecisionScope ps(128);
    LValueTable empty;
    CHECK(empty.find(chars[1]) == nullptr);
    try {
        (void)empty.value(chars[1]);
        FAIL("expected MissingLValue");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MissingLValue);
    }
}

TEST_CASE("random rationals round trip") {
    PrecisionScope ps(128);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> den(1, 1000000), num(-10000000, 10000000);
    for (int i = 0; i < 500; ++i) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        CHECK(recognize_rational(Real(x), 1000000, 128) == x);
    }
}
