#pragma once

#include <stdexcept>
#include <string>

namespace pverify {

struct DenominatorZero : std::runtime_error {
    explicit DenominatorZero(const std::string& what) : std::runtime_error(what) {}
};

struct SamplingExhausted : std::runtime_error {
    explicit SamplingExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct SyntaxError : std::runtime_error {
    int line;
    int column;
    SyntaxError(const std::string& what, int line_, int column_)
        : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

struct UnboundName : std::runtime_error {
    explicit UnboundName(const std::string& name) : std::runtime_error("unbound name: " + name) {}
};

struct DuplicateGenerator : std::runtime_error {
    explicit DuplicateGenerator(const std::string& name)
        : std::runtime_error("duplicate generator: " + name) {}
};

struct UnknownSystem : std::runtime_error {
    explicit UnknownSystem(const std::string& name)
        : std::runtime_error("unknown system: " + name) {}
};

struct UnresolvedName : std::runtime_error {
    explicit UnresolvedName(const std::string& name)
        : std::runtime_error("unresolved name in relation: " + name) {}
};

struct ComplexResidue : std::runtime_error {
    explicit ComplexResidue(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolution : std::runtime_error {
    explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

struct SingularityApproach : std::runtime_error {
    explicit SingularityApproach(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pverify
