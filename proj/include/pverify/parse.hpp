#pragma once

#include <string>

#include "pverify/system.hpp"

namespace pverify {

// Parses the line-oriented system-definition format:
//
//   system NAME
//   param NAME...
//   let NAME = EXPR                     # parse-time abbreviation, substituted away
//   generator NAME = EXPR
//   variant GENERATOR "label" = EXPR    # alternative reading of a generator
//   bracketname NAME = { NAME, NAME }
//   define NAME = GENPOLY               # polynomial in generators/parameters
//   vanish NAME NAME
//   structure NAME^2 = 2*(GENPOLY)
//   relation "provenance": FORMAL = FORMAL [= FORMAL ...]
//
// EXPR is arithmetic over x, y, z, p_x, p_y, p_z, declared parameters,
// integers and `i` with precedence ^ > unary minus > * / > + -.  FORMAL
// additionally allows generator names, named brackets, defined names,
// {f, g} bracket nodes and pd(f, NAME) formal derivatives.  `#` starts a
// comment; every declaration sits on one line; names must be declared before
// they are used.
//
// Errors: SyntaxError (with line/column), UnboundName, DuplicateGenerator.
SystemDefinition parse_system(const std::string& text);

// Renders a definition back into the file format; parse(serialize(d)) yields
// a definition structurally equal to d (text is canonicalized, not preserved).
std::string serialize_system(const SystemDefinition& def);

// Parses a standalone phase-space expression (no generator names).
RatExpr parse_phase_expression(const std::string& text, const ContextPtr& ctx);

// Parses a standalone formal expression; symbol resolution happens later.
FormalPtr parse_formal_expression(const std::string& text);

}  // namespace pverify
