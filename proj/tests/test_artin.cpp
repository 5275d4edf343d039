#include "doctest.h"
#include "support.hpp"

using namespace starkcheck;
using starkcheck::test::q;

namespace {

std::vector<mpz_class> zv(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Published Artin system for Q(sqrt3), constant term first.
const std::vector<std::vector<const char*>> kSqrt3Eps = {
    {"259615015/34", "-1992290385/17", "3552405747/68", "11744383129/68", "2143283961/68", "-745941483/68"},
    {"-990292384/17", "13259094279/17", "39748062825/34", "14516719313/34", "-381601623/34", "-614733423/34"},
    {"841213/34", "-6235494/17", "-1839447/68", "41738695/68", "27490335/68", "4808859/68"},
    {"4162067/17", "-64294053/17", "35023017/17", "88374291/17", "10385828/17", "-4649005/17"},
    {"-16529959/34", "130343317/17", "-451335551/68", "-478720265/68", "-27839861/68", "21452083/68"},
    {"-297585015/34", "32680736/17", "1039377233/68", "483119351/68", "-1362201/68", "-20133813/68"},
    {"325/74358", "-200/37179", "-1475/148716", "-725/148716", "-25/148716", "35/148716"},
    {"3/625"},
};

}  // namespace

TEST_CASE("sqrt10 normalized Artin system matches the published one") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    const auto& k = c.b.field;
    auto el = [&](const char* a, const char* b) { return test::poly_elem(k, {q(a), q(b)}); };
    CHECK(c.L->to_field(c.A.eps[0]) == el("190", "60"));
    CHECK(c.L->to_field(c.A.eps[1]) == el("190", "-60"));
    CHECK(c.L->to_field(c.A.eps[2]) == FieldElement(k, mpq_class(25, 64)));
    CHECK(c.L->to_field(c.A.eps[3]) == FieldElement(k, mpq_class(16, 625)));
    CHECK(c.A.alpha == zv({1, 1, 1}));
    CHECK(c.A.m == 256);
    CHECK(verify_artin_system(c.A, *c.L).ok());
}

TEST_CASE("sqrt10 unnormalized system") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    ArtinOptions opt = c.b.artin;
    opt.normalization = "none";
    ArtinSystem A = build_artin_system(*c.L, opt);
    CHECK(A.alpha == zv({2, 2, 4}));
    CHECK(A.kernel_doubled);
    CHECK(verify_artin_system(A, *c.L).ok());
    // eps = sqrt10 u, its conjugate, 5/8 and 2/5: the image of X_S has index 20.
    CHECK(A.m == 20);
}

TEST_CASE("sqrt3 Artin system matches the published one") {
    PrecisionScope ps(128);
    test::Context c("sqrt3");
    const auto& k = c.b.field;
    REQUIRE(c.A.eps.size() == kSqrt3Eps.size());
    for (std::size_t w = 0; w < kSqrt3Eps.size(); ++w) {
        CAPTURE(w);
        std::vector<mpq_class> coeffs;
        for (const char* s : kSqrt3Eps[w]) coeffs.push_back(q(s));
        CHECK(c.L->to_field(c.A.eps[w]) == test::poly_elem(k, coeffs));
    }
    CHECK(c.A.alpha == zv({100, 150, 58, 77}));
    CHECK(c.A.m == 3698415);
    CHECK(verify_artin_system(c.A, *c.L).ok());
}

TEST_CASE("beta search reproduces the published sqrt3 betas") {
    PrecisionScope ps(128);
    test::Context c("sqrt3");
    ArtinOptions opt = c.b.artin;
    opt.betas.reset();
    ArtinSystem A = build_artin_system(*c.L, opt);
    CHECK(A.n0 == std::vector<long>{3, 2, 2, 2});
    CHECK(A.betas == c.A.betas);
    CHECK(A.m == 3698415);
    for (int i = 0; i < 4; ++i) CHECK(dominance_slack(i, *c.L, A.betas[static_cast<std::size_t>(i)]) < -Real(mpq_class(1, 16)));
}

TEST_CASE("dominance matrices satisfy the hypothesis") {
    PrecisionScope ps(128);
    for (const char* name : {"sqrt10", "sqrt3", "sqrt42"}) {
        CAPTURE(name);
        test::Context c(name);
        RealMatrix a = dominance_matrix(c.A, *c.L, static_cast<int>(c.L->places().n_sk()) - 1);
        CHECK(satisfies_dominance_hypothesis(a));
    }
    RealMatrix bad(2, 2);
    bad(0, 0) = Real(-1L);
    bad(0, 1) = Real(1L);
    bad(1, 0) = Real(1L);
    bad(1, 1) = Real(-1L);
    CHECK_FALSE(satisfies_dominance_hypothesis(bad));
}

TEST_CASE("sqrt42 index") {
    PrecisionScope ps(128);
    test::Context c("sqrt42");
    CHECK(c.A.m == 191737);
    CHECK(verify_artin_system(c.A, *c.L).ok());
}

TEST_CASE("a pinned beta that is not dominant fails verification") {
    PrecisionScope ps(128);
    test::Context c("sqrt10");
    ArtinOptions opt = c.b.artin;
    (*opt.betas)[0] = SUnit::basis(3, 1);  // 2 is not large at w1 alone
    CHECK(dominance_slack(0, *c.L, (*opt.betas)[0]) > Real(0L));
    bool rejected = false;
    try {
        rejected = !verify_artin_system(build_artin_system(*c.L, opt), *c.L).ok();
    } catch (const Error&) {
        rejected = true;
    }
    CHECK(rejected);
}
