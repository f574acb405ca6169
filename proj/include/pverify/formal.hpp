#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "pverify/ratexpr.hpp"

namespace pverify {

// Formal expressions: arithmetic over named symbols, with two operations the
// plain phase-space expressions lack — Poisson-bracket nodes {f,g} and formal
// partial derivatives pd(f, name) taken with every other symbol held constant.
// Relations and structure claims are stored as these trees and only resolved
// to phase-space RatExprs when a verification actually runs.
enum class FormalKind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow, Bracket, Pd };

struct FormalExpr;
using FormalPtr = std::shared_ptr<const FormalExpr>;

struct FormalExpr {
    FormalKind kind;
    GaussianRational number;  // Number payload
    std::string symbol;       // Symbol payload; also the pd() variable name
    int exponent = 0;         // Pow payload
    FormalPtr a, b;           // operands (unary nodes use a only)

    static FormalPtr make_number(GaussianRational v);
    static FormalPtr make_symbol(std::string name);
    static FormalPtr make_binary(FormalKind k, FormalPtr lhs, FormalPtr rhs);
    static FormalPtr make_neg(FormalPtr operand);
    static FormalPtr make_pow(FormalPtr base, int exponent);
    static FormalPtr make_bracket(FormalPtr lhs, FormalPtr rhs);
    static FormalPtr make_pd(FormalPtr target, std::string wrt);
};

bool formal_equal(const FormalPtr& a, const FormalPtr& b);

// Minimal-parenthesis rendering; output re-parses to an equal tree.
std::string formal_to_string(const FormalPtr& e);

// Replaces symbol leaves found in `defs` by the bound trees (no recursion into
// replacements; bind in dependency order when definitions chain).
FormalPtr formal_substitute(const FormalPtr& e, const std::map<std::string, FormalPtr>& defs);

// d e / d wrt with all other symbols constant.  Bracket nodes cannot be
// differentiated formally and raise UnresolvedName.
FormalPtr formal_derivative(const FormalPtr& e, const std::string& wrt);

// Walks the tree calling `visit` on every symbol leaf (pd targets included).
void formal_for_each_symbol(const FormalPtr& e,
                            const std::function<void(const std::string&)>& visit);

using SymbolResolver = std::function<RatExpr(const std::string&)>;
using BracketFn = std::function<RatExpr(const RatExpr&, const RatExpr&)>;

// Evaluates to a phase-space expression.  `resolve` maps symbol names
// (generators, named brackets, parameters, phase variables) to RatExprs;
// `bracket` supplies the Poisson bracket for Bracket nodes.
RatExpr formal_evaluate(const FormalPtr& e, const ContextPtr& ctx,
                        const SymbolResolver& resolve, const BracketFn& bracket);

}  // namespace pverify
