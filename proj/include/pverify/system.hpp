#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pverify/formal.hpp"
#include "pverify/ratexpr.hpp"

namespace pverify {

// One claimed identity lhs = rhs.  Chains a = b = c in a source file are
// decomposed into consecutive pairs sharing the provenance string.
struct Relation {
    FormalPtr lhs;
    FormalPtr rhs;
    std::string provenance;
};

// A named bracket abbreviation, e.g. C1 = {A1, B1}.
struct NamedBracket {
    std::string name;
    std::string lhs;
    std::string rhs;
};

// A claim that a named bracket squares to a polynomial in the generators,
// e.g. C1^2 = 2*(F1).
struct StructureClaim {
    std::string squared_name;
    FormalPtr rhs;
};

// An alternative reading of one generator, kept alongside the primary
// expression so verification can report which variant actually conserves.
struct GeneratorVariant {
    std::string generator;
    std::string label;
    RatExpr expression;
};

struct SystemDefinition {
    std::string name;
    ContextPtr context;  // phase variables plus this system's parameters

    std::vector<std::string> generator_order;  // insertion order, H first by convention
    std::map<std::string, RatExpr> generators;

    std::vector<NamedBracket> named_brackets;
    // Named polynomial abbreviations over generator symbols (structure
    // functions); substituted into relations at parse time, retained here for
    // serialization and direct lookup.
    std::vector<std::pair<std::string, FormalPtr>> defines;

    std::vector<std::pair<std::string, std::string>> vanishing_pairs;
    std::vector<Relation> relations;
    std::vector<StructureClaim> structure_claims;
    std::vector<GeneratorVariant> variants;

    bool has_generator(const std::string& n) const { return generators.count(n) != 0; }
    const RatExpr& generator(const std::string& n) const;
    const NamedBracket* find_named_bracket(const std::string& n) const;
    const FormalPtr* find_define(const std::string& n) const;
};

// Structural equality used by the round-trip tests: exact same declarations
// with generator expressions compared as rational functions.
bool same_definition(const SystemDefinition& a, const SystemDefinition& b);

}  // namespace pverify
