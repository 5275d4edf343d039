#include "doctest.h"
#include "support.hpp"

#include "starkcheck/numfield.hpp"

using namespace starkcheck;
using starkcheck::test::q;

namespace {

FieldPtr qsqrt10() { return make_field({mpz_class(-10), mpz_class(0), mpz_class(1)}); }

}  // namespace

TEST_CASE("polynomial arithmetic and gcd") {
    Poly x = Poly::x();
    Poly a = (x - Poly::constant(1)) * (x + Poly::constant(2));
    Poly b = (x - Poly::constant(1)) * (x - Poly::constant(3));
    CHECK(gcd(a, b) == x - Poly::constant(1));
    auto [qt, r] = divmod(a, x - Poly::constant(1));
    CHECK(r.is_zero());
    CHECK(qt == x + Poly::constant(2));
    CHECK(a.derivative() == x * mpq_class(2) + Poly::constant(1));
    CHECK(a.eval(mpq_class(1)) == 0);
    CHECK(a.to_string() == "x^2 + x - 2");
}

TEST_CASE("inverse modulo a polynomial") {
    Poly p({q("-10"), q("0"), q("1")});
    Poly a({q("3"), q("1")});
    Poly g;
    Poly s = inverse_mod(a, p, &g);
    CHECK(g == Poly::constant(1));
    CHECK((s * a) % p == Poly::constant(1));
}

TEST_CASE("number field rejects repeated factors") {
    CHECK_THROWS_AS(NumberField({mpz_class(1), mpz_class(2), mpz_class(1)}), Error);
    CHECK_NOTHROW(NumberField({mpz_class(-10), mpz_class(0), mpz_class(1)}));
}

TEST_CASE("field element arithmetic in Q(sqrt10)") {
    auto k = qsqrt10();
    FieldElement s = FieldElement::x(k);
    FieldElement u = s + FieldElement(k, mpq_class(3));
    CHECK(u.norm() == -1);
    CHECK((u * u.inverse()).is_one());
    CHECK(s * s == FieldElement(k, mpq_class(10)));
    CHECK((u / u).is_one());
    CHECK(u.pow(-2) * u.pow(2) == FieldElement(k, mpq_class(1)));
    CHECK_THROWS_AS(FieldElement(k, mpq_class(0)).inverse(), Error);
}

TEST_CASE("automorphisms are checked against the minimal polynomial") {
    auto k = qsqrt10();
    FieldElement s = FieldElement::x(k);
    FieldElement conj = -s;
    CHECK(conj.is_root_of_min_poly());
    FieldElement u = s + FieldElement(k, mpq_class(3));
    CHECK(u.apply_aut(conj) == FieldElement(k, mpq_class(3)) - s);
    FieldElement bad = s + FieldElement(k, mpq_class(1));
    CHECK_FALSE(bad.is_root_of_min_poly());
    try {
        (void)u.apply_aut(bad);
        FAIL("expected NotAnAutomorphism");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAnAutomorphism);
    }
}

TEST_CASE("root refinement and embedding") {
    PrecisionScope ps(256);
    Poly p({q("-10"), q("0"), q("1")});
    RealRoot r{Real(3.16), q("3"), q("4"), 0, Real(1L)};
    RealRoot rr = refine_root(p, r, 200);
    Real expect = sqrt(Real(10L));
    CHECK(abs(rr.approx - expect) < Real::pow2(-190));
    CHECK(rr.lo <= rr.approx.to_rational());
    CHECK(rr.approx.to_rational() <= rr.hi);

    auto k = make_field({mpz_class(-10), mpz_class(0), mpz_class(1)});
    FieldElement u = FieldElement::x(k) + FieldElement(k, mpq_class(3));
    Real v = nf_embed(u, rr, 200);
    CHECK(abs(v - (expect + Real(3L))) < Real::pow2(-180));
}

TEST_CASE("refinement that leaves its interval is reported") {
    PrecisionScope ps(128);
    Poly p({q("-10"), q("0"), q("1")});
    // [4, 5] contains no root, so no refinement can stay inside it.
    RealRoot r{Real(4.5), q("4"), q("5"), 0, Real(1L)};
    try {
        (void)refine_root(p, r, 100);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RefinementEscapedInterval);
    }
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-7/34") == mpq_class(-7, 34));
    CHECK(parse_rational("12") == 12);
    CHECK(parse_rational("0.25") == mpq_class(1, 4));
    CHECK(parse_rational("6/8") == mpq_class(3, 4));
    CHECK(rational_string(mpq_class(-7, 34)) == "-7/34");
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}
