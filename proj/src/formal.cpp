#include "pverify/formal.hpp"

#include <stdexcept>

#include "pverify/errors.hpp"

namespace pverify {

namespace {

FormalPtr node(FormalExpr e) { return std::make_shared<const FormalExpr>(std::move(e)); }

FormalPtr num(long v) { return FormalExpr::make_number(GaussianRational(v)); }

bool is_number(const FormalPtr& e, long v) {
    return e->kind == FormalKind::Number && e->number == GaussianRational(v);
}

}  // namespace

FormalPtr FormalExpr::make_number(GaussianRational v) {
    FormalExpr e;
    e.kind = FormalKind::Number;
    e.number = std::move(v);
    return node(std::move(e));
}

FormalPtr FormalExpr::make_symbol(std::string name) {
    FormalExpr e;
    e.kind = FormalKind::Symbol;
    e.symbol = std::move(name);
    return node(std::move(e));
}

FormalPtr FormalExpr::make_binary(FormalKind k, FormalPtr lhs, FormalPtr rhs) {
    FormalExpr e;
    e.kind = k;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return node(std::move(e));
}

FormalPtr FormalExpr::make_neg(FormalPtr operand) {
    FormalExpr e;
    e.kind = FormalKind::Neg;
    e.a = std::move(operand);
    return node(std::move(e));
}

FormalPtr FormalExpr::make_pow(FormalPtr base, int exponent) {
    FormalExpr e;
    e.kind = FormalKind::Pow;
    e.a = std::move(base);
    e.exponent = exponent;
    return node(std::move(e));
}

FormalPtr FormalExpr::make_bracket(FormalPtr lhs, FormalPtr rhs) {
    FormalExpr e;
    e.kind = FormalKind::Bracket;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return node(std::move(e));
}

FormalPtr FormalExpr::make_pd(FormalPtr target, std::string wrt) {
    FormalExpr e;
    e.kind = FormalKind::Pd;
    e.a = std::move(target);
    e.symbol = std::move(wrt);
    return node(std::move(e));
}

bool formal_equal(const FormalPtr& a, const FormalPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case FormalKind::Number: return a->number == b->number;
        case FormalKind::Symbol: return a->symbol == b->symbol;
        case FormalKind::Neg: return formal_equal(a->a, b->a);
        case FormalKind::Pow:
            return a->exponent == b->exponent && formal_equal(a->a, b->a);
        case FormalKind::Pd:
            return a->symbol == b->symbol && formal_equal(a->a, b->a);
        default:
            return formal_equal(a->a, b->a) && formal_equal(a->b, b->b);
    }
}

namespace {

// Relative binding strengths used for parenthesis insertion.
int precedence(const FormalPtr& e) {
    switch (e->kind) {
        case FormalKind::Add:
        case FormalKind::Sub: return 1;
        case FormalKind::Mul:
        case FormalKind::Div: return 2;
        case FormalKind::Neg: return 3;
        case FormalKind::Pow: return 4;
        default: return 5;  // atoms
    }
}

std::string render(const FormalPtr& e, int parent_prec, bool right_side) {
    std::string out;
    int prec = precedence(e);
    switch (e->kind) {
        case FormalKind::Number: {
            out = e->number.to_string();
            // Negative or fractional literals read as compound expressions.
            if (!out.empty() && out[0] == '-') prec = 3;
            if (out.find('/') != std::string::npos || out.find('*') != std::string::npos)
                prec = 2;
            break;
        }
        case FormalKind::Symbol: out = e->symbol; break;
        case FormalKind::Add:
            out = render(e->a, prec, false) + " + " + render(e->b, prec, true);
            break;
        case FormalKind::Sub:
            out = render(e->a, prec, false) + " - " + render(e->b, prec, true);
            break;
        case FormalKind::Mul:
            out = render(e->a, prec, false) + "*" + render(e->b, prec, true);
            break;
        case FormalKind::Div:
            out = render(e->a, prec, false) + "/" + render(e->b, prec, true);
            break;
        case FormalKind::Neg: out = "-" + render(e->a, prec, true); break;
        case FormalKind::Pow: {
            std::string exp = std::to_string(e->exponent);
            if (e->exponent < 0) exp = "(" + exp + ")";
            out = render(e->a, prec, false) + "^" + exp;
            break;
        }
        case FormalKind::Bracket:
            out = "{" + render(e->a, 0, false) + ", " + render(e->b, 0, false) + "}";
            break;
        case FormalKind::Pd:
            out = "pd(" + render(e->a, 0, false) + ", " + e->symbol + ")";
            break;
    }
    bool needs_parens = prec < parent_prec;
    // Same precedence on the right of a non-commutative operator: a - (b + c),
    // a/(b*c).  Serialize conservatively with parentheses.
    if (prec == parent_prec && right_side && prec <= 2) needs_parens = true;
    return needs_parens ? "(" + out + ")" : out;
}

}  // namespace

std::string formal_to_string(const FormalPtr& e) { return render(e, 0, false); }

FormalPtr formal_substitute(const FormalPtr& e, const std::map<std::string, FormalPtr>& defs) {
    switch (e->kind) {
        case FormalKind::Number: return e;
        case FormalKind::Symbol: {
            auto it = defs.find(e->symbol);
            return it == defs.end() ? e : it->second;
        }
        case FormalKind::Neg: return FormalExpr::make_neg(formal_substitute(e->a, defs));
        case FormalKind::Pow:
            return FormalExpr::make_pow(formal_substitute(e->a, defs), e->exponent);
        case FormalKind::Pd:
            return FormalExpr::make_pd(formal_substitute(e->a, defs), e->symbol);
        default:
            return FormalExpr::make_binary(e->kind, formal_substitute(e->a, defs),
                                           formal_substitute(e->b, defs));
    }
}

FormalPtr formal_derivative(const FormalPtr& e, const std::string& wrt) {
    switch (e->kind) {
        case FormalKind::Number: return num(0);
        case FormalKind::Symbol: return num(e->symbol == wrt ? 1 : 0);
        case FormalKind::Add:
        case FormalKind::Sub:
            return FormalExpr::make_binary(e->kind, formal_derivative(e->a, wrt),
                                           formal_derivative(e->b, wrt));
        case FormalKind::Mul:
            return FormalExpr::make_binary(
                FormalKind::Add,
                FormalExpr::make_binary(FormalKind::Mul, formal_derivative(e->a, wrt), e->b),
                FormalExpr::make_binary(FormalKind::Mul, e->a, formal_derivative(e->b, wrt)));
        case FormalKind::Div: {
            FormalPtr top = FormalExpr::make_binary(
                FormalKind::Sub,
                FormalExpr::make_binary(FormalKind::Mul, formal_derivative(e->a, wrt), e->b),
                FormalExpr::make_binary(FormalKind::Mul, e->a, formal_derivative(e->b, wrt)));
            return FormalExpr::make_binary(FormalKind::Div, top,
                                           FormalExpr::make_pow(e->b, 2));
        }
        case FormalKind::Neg: return FormalExpr::make_neg(formal_derivative(e->a, wrt));
        case FormalKind::Pow: {
            if (e->exponent == 0) return num(0);
            FormalPtr chain = FormalExpr::make_binary(
                FormalKind::Mul, num(e->exponent),
                FormalExpr::make_binary(FormalKind::Mul,
                                        FormalExpr::make_pow(e->a, e->exponent - 1),
                                        formal_derivative(e->a, wrt)));
            return chain;
        }
        case FormalKind::Pd:
            return formal_derivative(formal_derivative(e->a, e->symbol), wrt);
        case FormalKind::Bracket:
            throw UnresolvedName("cannot take a formal derivative through a bracket node");
    }
    throw std::logic_error("unhandled formal node");
}

void formal_for_each_symbol(const FormalPtr& e,
                            const std::function<void(const std::string&)>& visit) {
    switch (e->kind) {
        case FormalKind::Number: return;
        case FormalKind::Symbol: visit(e->symbol); return;
        case FormalKind::Neg:
        case FormalKind::Pow:
            formal_for_each_symbol(e->a, visit);
            return;
        case FormalKind::Pd:
            visit(e->symbol);
            formal_for_each_symbol(e->a, visit);
            return;
        default:
            formal_for_each_symbol(e->a, visit);
            formal_for_each_symbol(e->b, visit);
            return;
    }
}

RatExpr formal_evaluate(const FormalPtr& e, const ContextPtr& ctx,
                        const SymbolResolver& resolve, const BracketFn& bracket) {
    switch (e->kind) {
        case FormalKind::Number: return RatExpr::constant(ctx, e->number);
        case FormalKind::Symbol: return resolve(e->symbol);
        case FormalKind::Add:
            return formal_evaluate(e->a, ctx, resolve, bracket) +
                   formal_evaluate(e->b, ctx, resolve, bracket);
        case FormalKind::Sub:
            return formal_evaluate(e->a, ctx, resolve, bracket) -
                   formal_evaluate(e->b, ctx, resolve, bracket);
        case FormalKind::Mul:
            return formal_evaluate(e->a, ctx, resolve, bracket) *
                   formal_evaluate(e->b, ctx, resolve, bracket);
        case FormalKind::Div:
            return formal_evaluate(e->a, ctx, resolve, bracket) /
                   formal_evaluate(e->b, ctx, resolve, bracket);
        case FormalKind::Neg: return -formal_evaluate(e->a, ctx, resolve, bracket);
        case FormalKind::Pow:
            return formal_evaluate(e->a, ctx, resolve, bracket).pow(e->exponent);
        case FormalKind::Bracket:
            return bracket(formal_evaluate(e->a, ctx, resolve, bracket),
                           formal_evaluate(e->b, ctx, resolve, bracket));
        case FormalKind::Pd:
            return formal_evaluate(formal_derivative(e->a, e->symbol), ctx, resolve,
                                   bracket);
    }
    throw std::logic_error("unhandled formal node");
}

}  // namespace pverify
