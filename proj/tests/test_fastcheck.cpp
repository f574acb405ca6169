#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pverify/bracket.hpp"
#include "pverify/catalog.hpp"
#include "pverify/errors.hpp"
#include "pverify/fastcheck.hpp"
#include "pverify/parse.hpp"
#include "pverify/verifier.hpp"

using namespace pverify;

namespace {

// Small random polynomial: a handful of terms with single-digit exponents so
// exact second derivatives stay cheap to cross-evaluate.
PolyExpr random_poly(const ContextPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> expo(0, 3);
    std::uniform_int_distribution<long> coeff(-9, 9);
    PolyExpr p(ctx);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (int v = 0; v < ctx->nvars(); ++v) m.e[v] = static_cast<std::uint8_t>(expo(rng));
        GaussianRational c(mpq_class(coeff(rng)), mpq_class(coeff(rng)));
        if (!c.is_zero()) p.add_term(m, c);
    }
    if (p.is_zero()) p.add_term(Monomial{}, GaussianRational(1));
    return p;
}

std::vector<GaussianRational> random_point(const ContextPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> mag(1, 9);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<GaussianRational> point;
    for (int v = 0; v < ctx->nvars(); ++v) {
        long m = mag(rng);
        point.emplace_back(mpq_class(coin(rng) ? m : -m));
    }
    return point;
}

// Exact second partial of a rational expression, evaluated at the point.
GaussianRational second_partial(const RatExpr& f, int i, int j,
                                const std::vector<GaussianRational>& point) {
    return f.derivative(i).derivative(j).evaluate(point);
}

// Frozen-adjudication labels: "closure|R6|1" means closure-table row 6, first
// equality of the chain.  Mirrors the catalog provenance strings.
std::string frozen_label(const std::string& provenance, int ordinal) {
    const std::string closure = "closure table, row ";
    const std::string second = "second algebra, row ";
    std::string pair = "|" + std::to_string(ordinal + 1);
    if (provenance.rfind(closure, 0) == 0)
        return "closure|R" + provenance.substr(closure.size()) + pair;
    if (provenance.rfind(second, 0) == 0)
        return "second|S" + provenance.substr(second.size()) + pair;
    if (provenance == "linear relation") return "linear|LIN" + pair;
    return provenance + pair;
}

std::set<std::string> fast_refuted_labels(const std::vector<FastVerdict>& vs) {
    std::set<std::string> out;
    std::string prev;
    int ordinal = 0;
    for (const FastVerdict& v : vs) {
        ordinal = v.relation.provenance == prev ? ordinal + 1 : 0;
        prev = v.relation.provenance;
        if (v.refuted) out.insert(frozen_label(v.relation.provenance, ordinal));
    }
    return out;
}

}  // namespace

TEST_CASE("polynomial jets match exact values, gradients and Hessians") {
    ContextPtr ctx = Context::create({"a", "b"});
    std::mt19937_64 rng(7101);
    for (int trial = 0; trial < 25; ++trial) {
        RatExpr f(random_poly(ctx, rng));
        std::vector<GaussianRational> point = random_point(ctx, rng);
        Jet j = jet_of(f, point);
        CHECK(j.order() == 2);
        CHECK(j.value() == f.evaluate(point));
        for (int k = 0; k < 6; ++k) CHECK(j.gradient(k) == f.derivative(k).evaluate(point));
        for (int a = 0; a < 6; ++a) {
            for (int b = a; b < 6; ++b) CHECK(j.hessian(a, b) == second_partial(f, a, b, point));
        }
    }
}

TEST_CASE("rational-function jets match exact values, gradients and Hessians") {
    ContextPtr ctx = Context::create({"a"});
    std::mt19937_64 rng(7102);
    int done = 0;
    while (done < 25) {
        RatExpr f(random_poly(ctx, rng), random_poly(ctx, rng));
        std::vector<GaussianRational> point = random_point(ctx, rng);
        if (f.den().evaluate(point).is_zero()) continue;
        ++done;
        Jet j = jet_of(f, point);
        CHECK(j.value() == f.evaluate(point));
        for (int k = 0; k < 6; ++k) CHECK(j.gradient(k) == f.derivative(k).evaluate(point));
        for (int a = 0; a < 6; ++a) {
            for (int b = a; b < 6; ++b) CHECK(j.hessian(a, b) == second_partial(f, a, b, point));
        }
    }
}

TEST_CASE("jet arithmetic mirrors expression arithmetic") {
    ContextPtr ctx = Context::create({});
    std::mt19937_64 rng(7103);
    for (int trial = 0; trial < 10; ++trial) {
        RatExpr f(random_poly(ctx, rng));
        RatExpr g(random_poly(ctx, rng));
        std::vector<GaussianRational> point = random_point(ctx, rng);
        if (g.num().evaluate(point).is_zero()) continue;
        Jet jf = jet_of(f, point), jg = jet_of(g, point);
        for (int a = 0; a < 6; ++a) {
            for (int b = a; b < 6; ++b) {
                CHECK((jf + jg).hessian(a, b) == jet_of(f + g, point).hessian(a, b));
                CHECK((jf * jg).hessian(a, b) == jet_of(f * g, point).hessian(a, b));
                CHECK((jf / jg).hessian(a, b) == jet_of(f / g, point).hessian(a, b));
                CHECK(jf.pow(3).hessian(a, b) == jet_of(f.pow(3), point).hessian(a, b));
            }
        }
        CHECK((jf - jg).value() == f.evaluate(point) - g.evaluate(point));
        CHECK((-jf).value() == -f.evaluate(point));
        CHECK(jg.pow(-2).value() == f.constant(ctx, GaussianRational(1)).evaluate(point) /
                                        g.pow(2).evaluate(point));
    }
}

TEST_CASE("jet bracket matches the symbolic Poisson bracket") {
    ContextPtr ctx = Context::create({"a"});
    std::mt19937_64 rng(7104);
    for (int trial = 0; trial < 10; ++trial) {
        RatExpr f(random_poly(ctx, rng));
        RatExpr g(random_poly(ctx, rng));
        std::vector<GaussianRational> point = random_point(ctx, rng);
        for (int sign : {+1, -1}) {
            BracketConvention conv{false, sign};
            RatExpr pb = poisson_bracket(f, g, conv);
            Jet jb = Jet::bracket(jet_of(f, point), jet_of(g, point), sign);
            CHECK(jb.order() == 1);
            CHECK(jb.value() == pb.evaluate(point));
            for (int k = 0; k < 6; ++k) CHECK(jb.gradient(k) == pb.derivative(k).evaluate(point));
        }
    }
}

TEST_CASE("bracket order bookkeeping: depth two works, depth three throws") {
    ContextPtr ctx = Context::create({});
    std::vector<GaussianRational> point(6, GaussianRational(2));
    Jet f = jet_of(RatExpr::variable(ctx, 0) * RatExpr::variable(ctx, 3), point);
    Jet once = Jet::bracket(f, f, +1);
    CHECK(once.order() == 1);
    Jet twice = Jet::bracket(once, f, +1);
    CHECK(twice.order() == 0);
    CHECK_THROWS_AS(Jet::bracket(twice, f, +1), std::logic_error);
    CHECK_THROWS_AS(f / jet_of(RatExpr::zero(ctx), point), DenominatorZero);
}

TEST_CASE("fast verdicts agree with the exact verifier on V_I") {
    SystemDefinition sys = builtin_system("V_I");
    std::vector<FastVerdict> fast = fast_verify_all(sys);
    std::vector<RelationVerdict> exact = verify_all_relations(sys);
    REQUIRE(fast.size() == exact.size());
    for (std::size_t k = 0; k < fast.size(); ++k) {
        CHECK(fast[k].refuted == (exact[k].status == VerdictStatus::refuted));
        if (!fast[k].refuted) continue;
        // The witness certifies the refutation against the exact residual too.
        CHECK_FALSE(fast[k].residual_value.is_zero());
        CHECK(exact[k].residual.evaluate(fast[k].witness) == fast[k].residual_value);
    }
}

TEST_CASE("fast structure claims single out N^2 on V_I") {
    SystemDefinition sys = builtin_system("V_I");
    std::vector<FastVerdict> fast = fast_verify_structure_claims(sys);
    REQUIRE(fast.size() == 5);
    for (std::size_t k = 0; k < fast.size(); ++k) CHECK(fast[k].refuted == (k == 4));
}

TEST_CASE("fast adjudication reproduces the adjudicated record on every system") {
    const std::map<std::string, std::set<std::string>> expected_relations = {
        {"V_I", {"closure|R6|1", "closure|R13|2", "closure|R14|1", "closure|R14|2"}},
        {"V_II",
         {"closure|R3|1", "closure|R3|2", "closure|R8|2", "closure|R10|2", "closure|R11|1",
          "closure|R11|2"}},
        {"V_III", {"closure|R4|2", "closure|R5|2"}},
        {"V_iv",
         {"closure|R5|1", "closure|R7|1", "closure|R7|2", "closure|R15|1", "closure|R15|2",
          "closure|R22|1"}},
        {"V_v",
         {"closure|R1|1", "closure|R1|2", "closure|R3|1", "closure|R3|2", "closure|R8|1",
          "closure|R8|2", "closure|R11|1", "closure|R11|2", "closure|R14|1", "closure|R14|2",
          "closure|R15|1", "closure|R15|2"}},
        {"V_vi",
         {"closure|R13|1", "closure|R15|1", "closure|R17|2", "closure|R21|1", "closure|R22|1"}},
        {"V_vii",
         {"closure|R2|2", "closure|R2|3", "closure|R9|1", "closure|R18|1", "closure|R19|1",
          "closure|R22|2", "closure|R23|1", "closure|R27|1", "closure|R28|1", "closure|R30|1"}},
    };
    const std::map<std::string, std::set<std::string>> expected_structure = {
        {"V_I", {"N^2"}},   {"V_II", {"C1^2", "N^2"}}, {"V_III", {"C2^2"}}, {"V_iv", {"C2^2"}},
        {"V_v", {"C1^2", "C2^2", "M^2"}}, {"V_vi", {"C1^2"}}, {"V_vii", {}},
    };
    const std::map<std::string, std::pair<int, int>> expected_counts = {
        {"V_I", {38, 5}}, {"V_II", {38, 5}}, {"V_III", {38, 3}}, {"V_iv", {41, 2}},
        {"V_v", {38, 3}}, {"V_vi", {41, 2}}, {"V_vii", {46, 1}},
    };

    for (const std::string& name : builtin_system_names()) {
        CAPTURE(name);
        SystemDefinition sys = builtin_system(name);
        std::vector<FastVerdict> rel = fast_verify_all(sys);
        std::vector<FastVerdict> str = fast_verify_structure_claims(sys);
        CHECK(static_cast<int>(rel.size()) == expected_counts.at(name).first);
        CHECK(static_cast<int>(str.size()) == expected_counts.at(name).second);
        CHECK(fast_refuted_labels(rel) == expected_relations.at(name));
        std::set<std::string> refuted_claims;
        for (std::size_t k = 0; k < str.size(); ++k) {
            if (str[k].refuted) refuted_claims.insert(sys.structure_claims[k].squared_name + "^2");
        }
        CHECK(refuted_claims == expected_structure.at(name));
        for (const FastVerdict& v : rel) {
            if (v.refuted) CHECK_FALSE(v.residual_value.is_zero());
        }
    }
}

TEST_CASE("fast checks respect the bracket convention") {
    SystemDefinition sys = parse_system(
        "system toy\n"
        "generator H = p_x^2 + p_y^2 + p_z^2 + x^2\n"
        "relation \"closure table, row 1\": {x, p_x} = 1\n"
        "relation \"closure table, row 2\": {H, x} = -2*p_x\n");
    std::vector<FastVerdict> dflt = fast_verify_all(sys);
    REQUIRE(dflt.size() == 2);
    CHECK_FALSE(dflt[0].refuted);
    CHECK_FALSE(dflt[1].refuted);

    std::vector<FastVerdict> neg = fast_verify_all(sys, BracketConvention{false, -1});
    CHECK(neg[0].refuted);  // {x, p_x} = -1 under the flipped sign
    CHECK(neg[1].refuted);

    std::vector<FastVerdict> half = fast_verify_all(sys, BracketConvention{true, +1});
    CHECK_FALSE(half[0].refuted);  // phase-variable bracket is convention-H independent
    CHECK(half[1].refuted);        // {H, x} becomes -p_x with the halved kinetic part
}

TEST_CASE("pd nodes evaluate through the formal derivative") {
    SystemDefinition sys = parse_system(
        "system toy\n"
        "generator H = p_x^2 + p_y^2 + p_z^2\n"
        "generator A = x^2 + p_x^2\n"
        "define F1 = A^2 + 2*A\n"
        "relation \"closure table, row 1\": pd(F1, A) = 2*A + 2\n"
        "relation \"closure table, row 2\": pd(F1, A) = 2*A\n");
    std::vector<FastVerdict> fast = fast_verify_all(sys);
    REQUIRE(fast.size() == 2);
    CHECK_FALSE(fast[0].refuted);
    CHECK(fast[1].refuted);
}
