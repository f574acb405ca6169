#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pverify/bracket.hpp"
#include "pverify/linalg.hpp"
#include "pverify/system.hpp"

namespace pverify {

// Seed used whenever an operation needs random evaluation points and the
// caller does not supply one.  Reports echo the seed actually used.
inline constexpr unsigned long long kDefaultSeed = 42;

// Resolves generator and named-bracket symbols of one system to phase-space
// expressions under one bracket convention, memoizing every resolution.  All
// verifier operations share this so the large generators (and brackets of
// brackets) are expanded once per run.
class SystemEvaluator {
  public:
    SystemEvaluator(const SystemDefinition& sys, const BracketConvention& conv);

    const SystemDefinition& system() const { return *sys_; }
    const BracketConvention& convention() const { return conv_; }

    // Generator (H under the convention), named bracket, parameter, or phase
    // variable; throws UnresolvedName otherwise.
    const RatExpr& resolve(const std::string& name);
    RatExpr evaluate(const FormalPtr& e);
    RatExpr bracket(const RatExpr& f, const RatExpr& g) const;

  private:
    // Memo key with named-bracket symbols expanded to their defining nodes,
    // so {C1, D} and {{A1,B1}, {B1,B2}} share one computation.
    std::string node_key(const FormalPtr& e) const;
    std::string name_key(const std::string& name) const;

    const SystemDefinition* sys_;
    BracketConvention conv_;
    std::map<std::string, RatExpr> cache_;
    // Bracket and power nodes keyed by canonical form: nested brackets and
    // squared brackets recur across relation sections and are by far the
    // dominant cost.
    std::map<std::string, RatExpr> node_cache_;
};

// Shared state for a full verification run over one system: one memoized
// evaluator per convention, built on first use.  Passing the same session to
// several of the calls below reuses every expanded generator and bracket; the
// definition-taking overloads construct a throwaway session internally.
class VerificationSession {
  public:
    explicit VerificationSession(const SystemDefinition& sys) : sys_(&sys) {}

    const SystemDefinition& system() const { return *sys_; }
    SystemEvaluator& evaluator(const BracketConvention& conv);

  private:
    const SystemDefinition* sys_;
    std::optional<SystemEvaluator> slots_[4];
    std::optional<SystemEvaluator> extra_;
};

// ---------------------------------------------------------------------------
// Commutation table

struct PairClassification {
    std::string a, b;
    bool zero = false;
    RatExpr value;  // the bracket itself when nonzero
};

// Mismatch between the computed zero set and the claimed one (the claimed set
// is the listed vanishing pairs plus every pair containing H).
struct PairDiscrepancy {
    std::string a, b;
    // true: claimed zero, computed nonzero (witness holds an evaluation point
    // where the bracket is nonzero); false: computed zero but never claimed.
    bool claimed_zero = false;
    std::vector<GaussianRational> witness;
};

struct CommutationTable {
    std::vector<PairClassification> pairs;  // all unordered pairs, declaration order
    std::vector<PairDiscrepancy> discrepancies;

    const PairClassification* find(const std::string& a, const std::string& b) const;
    // Computed zero set restricted to pairs not containing H.
    std::vector<std::pair<std::string, std::string>> vanishing_pairs() const;
};

CommutationTable commutation_table(const SystemDefinition& sys,
                                   const BracketConvention& conv = {},
                                   unsigned long long seed = kDefaultSeed);
CommutationTable commutation_table(VerificationSession& session, const BracketConvention& conv,
                                   unsigned long long seed);

// ---------------------------------------------------------------------------
// Relation verification

enum class VerdictStatus { verified, refuted, verified_under_convention };

struct RelationVerdict {
    Relation relation;
    VerdictStatus status = VerdictStatus::refuted;
    // Requested convention, or the alternate one that validated when status is
    // verified_under_convention.
    BracketConvention convention;
    RatExpr residual;  // lhs - rhs; nonzero exactly when refuted
    std::string residual_excerpt;
    std::vector<GaussianRational> witness;  // point where the residual is nonzero

    bool ok() const { return status != VerdictStatus::refuted; }
};

// Renders the leading terms of the numerator in canonical order, appending
// "(+ k more)" and the denominator when present.
std::string residual_excerpt(const RatExpr& residual, int max_terms = 3);

RelationVerdict verify_relation(const SystemDefinition& sys, const Relation& rel,
                                const BracketConvention& conv = {},
                                unsigned long long seed = kDefaultSeed);
RelationVerdict verify_relation(VerificationSession& session, const Relation& rel,
                                const BracketConvention& conv, unsigned long long seed);

// Every declared relation, in declaration order.
std::vector<RelationVerdict> verify_all_relations(const SystemDefinition& sys,
                                                  const BracketConvention& conv = {},
                                                  unsigned long long seed = kDefaultSeed);
std::vector<RelationVerdict> verify_all_relations(VerificationSession& session,
                                                  const BracketConvention& conv,
                                                  unsigned long long seed);

// The relations whose provenance marks them as part of the second algebra or
// the linear relation between named brackets.
std::vector<RelationVerdict> verify_second_algebra(const SystemDefinition& sys,
                                                   const BracketConvention& conv = {},
                                                   unsigned long long seed = kDefaultSeed);
std::vector<RelationVerdict> verify_second_algebra(VerificationSession& session,
                                                   const BracketConvention& conv,
                                                   unsigned long long seed);

// Every declared squared-bracket claim (C^2 = polynomial in generators), in
// declaration order.
std::vector<RelationVerdict> verify_structure_claims(const SystemDefinition& sys,
                                                     const BracketConvention& conv = {},
                                                     unsigned long long seed = kDefaultSeed);
std::vector<RelationVerdict> verify_structure_claims(VerificationSession& session,
                                                     const BracketConvention& conv,
                                                     unsigned long long seed);

// ---------------------------------------------------------------------------
// Special structure

// The claims are the squared-bracket right-hand sides: {A1,B1}^2 = two_f1 and
// {A2,B2}^2 = two_f2, each a polynomial over generator symbols.  Either claim
// may be absent, which skips the lines needing it.  Checked lines: the three
// vanishing brackets, the squared-bracket identities, the formal
// partial-derivative closure identities, and the two mixed identities
// {{A1,B1},B2} = {A1,{B1,B2}} and {{A2,B2},B1} = -{A2,{B1,B2}}.
// The checked lines themselves, for callers that adjudicate by other means.
std::vector<Relation> special_structure_relations(const SystemDefinition& sys,
                                                  const std::optional<FormalPtr>& two_f1,
                                                  const std::optional<FormalPtr>& two_f2);

std::vector<RelationVerdict> verify_special_structure(
    const SystemDefinition& sys, const std::optional<FormalPtr>& two_f1,
    const std::optional<FormalPtr>& two_f2, const BracketConvention& conv = {},
    unsigned long long seed = kDefaultSeed);
std::vector<RelationVerdict> verify_special_structure(
    VerificationSession& session, const std::optional<FormalPtr>& two_f1,
    const std::optional<FormalPtr>& two_f2, const BracketConvention& conv,
    unsigned long long seed);

// Pulls the claims out of the declared structure statements (C1^2 = ... and
// C2^2 = ... where C1 = {A1,B1}, C2 = {A2,B2}).
std::pair<std::optional<FormalPtr>, std::optional<FormalPtr>> declared_structure_claims(
    const SystemDefinition& sys);

// ---------------------------------------------------------------------------
// Ansatz fitting

struct StructureAnsatz {
    std::vector<std::string> generator_basis;
    int max_generator_degree = 3;
    int max_parameter_degree = 3;
};

// Exact fit of a target against generator monomials with parameter-polynomial
// coefficients.  residual_zero means the returned coefficients reproduce the
// target exactly (verified by substitution, independent of the random row
// selection).  nullspace_dim is the solution-space dimension of the final
// exactly-reduced subsystem; free coordinates are set to zero, which keeps the
// support on the earliest monomials under the deterministic candidate order.
struct FitResult {
    StructureAnsatz ansatz;
    bool solvable = false;
    bool residual_zero = false;
    // exponent vector over ansatz.generator_basis -> coefficient polynomial in
    // the parameters; nonzero coefficients only, candidate order.
    std::vector<std::pair<std::vector<int>, PolyExpr>> coefficients;
    int nullspace_dim = 0;
    RatExpr fitted;    // phase-space expansion of the fit
    RatExpr residual;  // target - fitted (the target itself when unsolvable)
    std::string note;

    const PolyExpr* coefficient(const std::vector<int>& exponents) const;
};

// Deterministic candidate order: graded, higher total degree first, ties to
// the earlier basis generator with the higher exponent.
std::vector<std::vector<int>> ansatz_monomials(int basis_size, int max_degree);

// Renders a fit as "c * G1^e1*G2^e2 + ..." over the given basis names.
std::string fit_to_string(const FitResult& fit);

FitResult fit_target(const SystemDefinition& sys, const RatExpr& target,
                     const StructureAnsatz& ansatz, const BracketConvention& conv = {},
                     unsigned long long seed = kDefaultSeed);

// Target = (named bracket)^2.
FitResult fit_structure_function(const SystemDefinition& sys, const std::string& bracket_name,
                                 const StructureAnsatz& ansatz,
                                 const BracketConvention& conv = {},
                                 unsigned long long seed = kDefaultSeed);

// Target = {S_i, {S_j, S_k}}, fitted against all generators at degree <= 2
// unless the ansatz says otherwise.
FitResult fit_quadratic_closure(const SystemDefinition& sys, const std::string& i,
                                const std::string& j, const std::string& k,
                                const StructureAnsatz& ansatz, const BracketConvention& conv = {},
                                unsigned long long seed = kDefaultSeed);

// All generators, degree 2 in generators, degree 3 in parameters.
StructureAnsatz closure_ansatz(const SystemDefinition& sys);

// ---------------------------------------------------------------------------
// Independence

struct RankReport {
    std::vector<std::string> names;
    int rank = 0;    // maximum exact rank over the sampled points
    int trials = 0;  // points actually sampled
    // Point (phase variables then parameters) attaining the maximum.
    std::vector<GaussianRational> certificate_point;
};

// Exact rank of the Jacobian with respect to (x, y, z, p_x, p_y, p_z) at
// random denominator-safe rational points; the maximum over `trials` points
// is a certified lower bound for the generic rank.
RankReport check_functional_independence(const SystemDefinition& sys,
                                         const std::vector<std::string>& names,
                                         const BracketConvention& conv = {}, int trials = 3,
                                         unsigned long long seed = kDefaultSeed);

struct LinearIndependenceReport {
    std::vector<std::string> names;
    bool independent = false;
    // When dependent with constant coefficients: a primitive integer-ish
    // vector c with sum_i c_i * E_i + affine_shift = 0, leading entry
    // positive.  affine_shift is a polynomial of degree <= 1 in the
    // parameters.
    std::vector<GaussianRational> dependency;
    PolyExpr affine_shift;
    std::string note;
};

// Decides linear independence over rational-function-in-parameter
// coefficients, allowing an affine constant term.  Independence is certified
// by full column rank at a random parameter specialization; dependencies are
// produced exactly in the canonical monomial basis.
LinearIndependenceReport check_linear_independence(const SystemDefinition& sys,
                                                   const std::vector<std::string>& names,
                                                   const BracketConvention& conv = {},
                                                   unsigned long long seed = kDefaultSeed);

// Same decision on explicit expressions (labels are used only for reporting).
LinearIndependenceReport check_linear_independence_exprs(
    const SystemDefinition& sys, const std::vector<std::string>& labels,
    const std::vector<RatExpr>& exprs, unsigned long long seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Conventions and variants

// First convention (enumeration order) under which {H, S} = 0 for every
// generator S; nullopt when none works.
std::optional<BracketConvention> validating_convention(const SystemDefinition& sys);

struct VariantReport {
    GeneratorVariant variant;
    bool conserved = false;  // under the requested convention
    // For non-H variants: {H, variant} = 0; for H variants: every other
    // generator Poisson-commutes with the variant Hamiltonian.
    std::string detail;
};

std::vector<VariantReport> check_variants(const SystemDefinition& sys,
                                          const BracketConvention& conv = {});

}  // namespace pverify
