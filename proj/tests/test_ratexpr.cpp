#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "pverify/errors.hpp"
#include "pverify/ratexpr.hpp"

using pverify::Context;
using pverify::GaussianRational;
using pverify::PolyExpr;
using pverify::RatExpr;

namespace {

pverify::ContextPtr ctx() {
    static pverify::ContextPtr c = Context::create({"alpha", "beta"});
    return c;
}

RatExpr var(int v) { return RatExpr::variable(ctx(), v); }

RatExpr random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> pick(0, 5);
    auto random_poly = [&](int terms) {
        PolyExpr p = PolyExpr::zero(ctx());
        for (int t = 0; t < terms; ++t) {
            pverify::Monomial m;
            m.e[pick(rng)] = static_cast<std::uint8_t>(pick(rng) % 3);
            m.e[pick(rng)] = static_cast<std::uint8_t>(pick(rng) % 3);
            p.add_term(m, GaussianRational(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
        }
        return p;
    };
    PolyExpr num = random_poly(3);
    PolyExpr den = random_poly(2);
    if (den.is_zero()) den = PolyExpr::constant(ctx(), GaussianRational(1));
    return RatExpr(num, den);
}

}  // namespace

TEST_CASE("monomial inverse cancels: (1/z^2) * z^2 = 1") {
    RatExpr z = var(2);
    RatExpr one = RatExpr::constant(ctx(), GaussianRational(1));
    RatExpr inv_z2 = one / (z * z);
    RatExpr prod = inv_z2 * (z * z);
    CHECK(prod.equals(one));
    CHECK(prod == one);  // simplification reaches the canonical form too
}

TEST_CASE("denominator normalized monic") {
    // (x) / (2y): canonical den must be y with numerator carrying the 1/2.
    RatExpr r(PolyExpr::variable(ctx(), 0),
              PolyExpr::variable(ctx(), 1).scaled(GaussianRational(2)));
    CHECK(r.den().leading_coefficient().is_one());
    CHECK(r.equals(RatExpr(PolyExpr::variable(ctx(), 0).scaled(GaussianRational(mpq_class(1, 2))),
                           PolyExpr::variable(ctx(), 1))));
}

TEST_CASE("cross-multiplication equality") {
    RatExpr x = var(0), y = var(1), z = var(2);
    CHECK((x * x / x).equals(x));
    RatExpr w = x + RatExpr::constant(ctx(), GaussianRational::i()) * y;
    CHECK((w * w / w).equals(w));
    CHECK_FALSE((x / z).equals(x / y));
}

TEST_CASE("quotient rule: d(alpha/z^2)/dz = -2 alpha/z^3") {
    RatExpr alpha = var(6);
    RatExpr z = var(2);
    RatExpr f = alpha / (z * z);
    RatExpr expect = -(RatExpr::constant(ctx(), GaussianRational(2)) * alpha) / (z * z * z);
    CHECK(f.derivative(2).equals(expect));
}

TEST_CASE("evaluate: pole raises DenominatorZero") {
    RatExpr z = var(2);
    RatExpr f = RatExpr::constant(ctx(), GaussianRational(1)) / (z * z);
    std::vector<GaussianRational> point(ctx()->nvars(), GaussianRational(0));
    CHECK_THROWS_AS(f.evaluate(point), pverify::DenominatorZero);
    point[2] = GaussianRational(2);
    CHECK(f.evaluate(point) == GaussianRational(mpq_class(1, 4)));
}

TEST_CASE("field axioms on random rational expressions") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 40; ++k) {
        RatExpr a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
        CHECK((a + b).equals(b + a));
        CHECK(((a + b) + c).equals(a + (b + c)));
        CHECK((a * (b + c)).equals(a * b + a * c));
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("simplification cancels dictionary factors") {
    RatExpr x = var(0), y = var(1);
    RatExpr i = RatExpr::constant(ctx(), GaussianRational::i());
    RatExpr w = x + i * y;   // x + i y
    RatExpr wb = x - i * y;  // x - i y
    RatExpr f = (w * w * wb) / (w * wb * wb);
    // After cancellation the denominator is the single factor x - i y (monic).
    CHECK(f.den().total_degree() == 1);
    CHECK(f.equals(w / wb));
}

TEST_CASE("probabilistic zero agrees with exact equality") {
    std::mt19937_64 rng(99);
    int disagreements = 0;
    for (int k = 0; k < 100; ++k) {
        RatExpr a = random_rat(rng), b = random_rat(rng);
        RatExpr diff = a - b;
        bool exact_zero = a.equals(b);
        auto verdict = pverify::probabilistic_zero(diff, 1000000, 3, 555 + k);
        if (verdict.probably_zero != exact_zero) ++disagreements;
        if (!verdict.probably_zero) {
            // A nonzero verdict must carry a valid witness.
            CHECK_FALSE(diff.evaluate(verdict.witness).is_zero());
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("zero polynomial is probably zero") {
    RatExpr zero = RatExpr::zero(ctx());
    CHECK(pverify::probabilistic_zero(zero, 1000000, 3, 1).probably_zero);
    RatExpr x = var(0), y = var(1);
    CHECK(pverify::probabilistic_zero(x * y - y * x, 1000000, 3, 2).probably_zero);
}

TEST_CASE("integer powers") {
    RatExpr x = var(0);
    CHECK(x.pow(3).equals(x * x * x));
    CHECK(x.pow(-2).equals(RatExpr::constant(ctx(), GaussianRational(1)) / (x * x)));
    CHECK(x.pow(0).equals(RatExpr::constant(ctx(), GaussianRational(1))));
}

TEST_CASE("serialization round shape") {
    RatExpr x = var(0), z = var(2);
    RatExpr f = x / (z * z);
    CHECK(f.to_string() == "(x)/(z^2)");
    CHECK((x + x).to_string() == "2*x");
}
