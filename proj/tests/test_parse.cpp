#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pverify/errors.hpp"
#include "pverify/parse.hpp"

using namespace pverify;

namespace {

const char* kSmallFile = R"(# A compact definition exercising every declaration form.
system demo
param alpha beta

let w = x + i*y
generator H = p_x^2 + p_y^2 + p_z^2 + alpha*w^2
generator A1 = p_z^2 + beta/w^2
generator B1 = x*p_y - y*p_x
variant A1 "alternate sign" = p_z^2 - beta/w^2
bracketname C1 = { A1, B1 }
define F1 = A1^2*H + 1/2*beta*A1
vanish A1 B1
structure C1^2 = 2*(F1)
relation "closure": {{A1, B1}, B1} = 4*A1*H - beta = pd(F1, A1)
)";

}  // namespace

TEST_CASE("minimal system") {
    SystemDefinition d = parse_system("system tiny\ngenerator H = p_x^2\n");
    CHECK(d.name == "tiny");
    CHECK(d.generator_order == std::vector<std::string>{"H"});
    CHECK(d.context->nparams() == 0);
    RatExpr px = RatExpr::variable(d.context, 3);
    CHECK(d.generator("H").equals(px * px));
}

TEST_CASE("full grammar parses") {
    SystemDefinition d = parse_system(kSmallFile);
    CHECK(d.name == "demo");
    CHECK(d.context->parameter_names() == std::vector<std::string>{"alpha", "beta"});
    CHECK(d.generator_order == std::vector<std::string>{"H", "A1", "B1"});
    CHECK(d.named_brackets.size() == 1);
    CHECK(d.named_brackets[0].name == "C1");
    CHECK(d.defines.size() == 1);
    CHECK(d.vanishing_pairs.size() == 1);
    CHECK(d.structure_claims.size() == 1);
    // The chain lhs = mid = rhs decomposes into two relations.
    CHECK(d.relations.size() == 2);
    CHECK(d.relations[0].provenance == "closure");
    CHECK(d.variants.size() == 1);
    CHECK(d.variants[0].generator == "A1");
    CHECK(d.variants[0].label == "alternate sign");

    // The let-abbreviation w = x + i*y was substituted into H.
    ContextPtr c = d.context;
    RatExpr x = RatExpr::variable(c, 0), y = RatExpr::variable(c, 1);
    RatExpr px = RatExpr::variable(c, 3), py = RatExpr::variable(c, 4),
            pz = RatExpr::variable(c, 5);
    RatExpr alpha = RatExpr::variable(c, 6);
    RatExpr iy = RatExpr::constant(c, GaussianRational::i()) * y;
    RatExpr expect = px * px + py * py + pz * pz + alpha * (x + iy) * (x + iy);
    CHECK(d.generator("H").equals(expect));
}

TEST_CASE("round-trip is the identity on definitions") {
    SystemDefinition d1 = parse_system(kSmallFile);
    std::string text = serialize_system(d1);
    SystemDefinition d2 = parse_system(text);
    CHECK(same_definition(d1, d2));
    // And serialization itself is stable.
    CHECK(serialize_system(d2) == text);
}

TEST_CASE("precedence") {
    ContextPtr c = Context::create({"alpha"});
    RatExpr x = RatExpr::variable(c, 0), y = RatExpr::variable(c, 1);
    RatExpr alpha = RatExpr::variable(c, 6);
    RatExpr i_const = RatExpr::constant(c, GaussianRational::i());

    CHECK(parse_phase_expression("x^2 + i*y", c).equals(x * x + i_const * y));
    // Unary minus binds looser than ^.
    CHECK(parse_phase_expression("-x^2", c).equals(-(x * x)));
    CHECK(parse_phase_expression("(-x)^2", c).equals(x * x));
    // * and / are left-associative and bind looser than ^.
    CHECK(parse_phase_expression("alpha/(x+i*y)^2", c)
              .equals(alpha / ((x + i_const * y) * (x + i_const * y))));
    CHECK(parse_phase_expression("6/2/3", c)
              .equals(RatExpr::constant(c, GaussianRational(1))));
    CHECK(parse_phase_expression("x^(-2)", c)
              .equals(RatExpr::constant(c, GaussianRational(1)) / (x * x)));
    CHECK(parse_phase_expression("2*x - -3", c)
              .equals(x + x + RatExpr::constant(c, GaussianRational(3))));
}

TEST_CASE("formal expressions: brackets and pd") {
    FormalPtr e = parse_formal_expression("{A1, {A1, B1}}");
    REQUIRE(e->kind == FormalKind::Bracket);
    CHECK(e->a->kind == FormalKind::Symbol);
    CHECK(e->b->kind == FormalKind::Bracket);

    // pd differentiates formally with other symbols constant.
    ContextPtr c = Context::create({});
    RatExpr x = RatExpr::variable(c, 0), y = RatExpr::variable(c, 1);
    FormalPtr d = parse_formal_expression("pd(A^2*B + 3*A, A)");
    auto resolve = [&](const std::string& name) -> RatExpr {
        if (name == "A") return x;
        if (name == "B") return y;
        throw UnboundName(name);
    };
    auto no_bracket = [](const RatExpr&, const RatExpr&) -> RatExpr {
        throw std::logic_error("unused");
    };
    RatExpr two = RatExpr::constant(c, GaussianRational(2));
    RatExpr three = RatExpr::constant(c, GaussianRational(3));
    CHECK(formal_evaluate(d, c, resolve, no_bracket).equals(two * x * y + three));
}

TEST_CASE("numeric literals fold") {
    FormalPtr half = parse_formal_expression("1/2");
    REQUIRE(half->kind == FormalKind::Number);
    CHECK(half->number == GaussianRational(mpq_class(1, 2)));
    FormalPtr two_i = parse_formal_expression("2*i");
    REQUIRE(two_i->kind == FormalKind::Number);
    CHECK(two_i->number == GaussianRational(mpq_class(0), mpq_class(2)));
    FormalPtr neg = parse_formal_expression("-3");
    REQUIRE(neg->kind == FormalKind::Number);
    CHECK(neg->number == GaussianRational(-3));
    // Serialized formal text re-parses to an equal tree.
    FormalPtr mix = parse_formal_expression("-1/2*A*{B, C} + (3 - i)^2/D");
    CHECK(formal_equal(parse_formal_expression(formal_to_string(mix)), mix));
}

TEST_CASE("errors carry position and type") {
    CHECK_THROWS_AS(parse_system("system s\ngenerator H = p_x^2 + epsilon\n"), UnboundName);
    CHECK_THROWS_AS(
        parse_system("system s\ngenerator H = p_x^2\ngenerator H = p_y^2\n"),
        DuplicateGenerator);
    CHECK_THROWS_AS(parse_system("system s\ngenerator x = p_x^2\n"), DuplicateGenerator);
    CHECK_THROWS_AS(parse_system("system s\nparam a\ngenerator H = p_x^2\nparam b\n"),
                    SyntaxError);
    // A file without H is rejected.
    CHECK_THROWS_AS(parse_system("system s\ngenerator A = p_x^2\n"), UnboundName);
    try {
        parse_system("system s\ngenerator H = p_x^2 + + y\n");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 23);
    }
    try {
        parse_phase_expression("x + ($)", Context::create({}));
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 6);
    }
    // Brackets are rejected in plain phase expressions.
    CHECK_THROWS_AS(parse_phase_expression("{x, p_x}", Context::create({})), SyntaxError);
}

TEST_CASE("comments and blank lines are ignored") {
    SystemDefinition d = parse_system(
        "# leading comment\n\nsystem c  # trailing comment\n\n"
        "generator H = p_x^2  # kinetic\n\n# done\n");
    CHECK(d.name == "c");
    CHECK(d.generator_order.size() == 1);
}

TEST_CASE("relation with division by generator") {
    SystemDefinition d = parse_system(
        "system q\ngenerator H = p_x^2\ngenerator A = p_y^2\n"
        "relation \"ratio\": {H, A}/A = 0\n");
    REQUIRE(d.relations.size() == 1);
    CHECK(d.relations[0].lhs->kind == FormalKind::Div);
}
