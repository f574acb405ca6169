#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pverify/context.hpp"
#include "pverify/gaussian_rational.hpp"

namespace pverify {

// Exponent vector over the flat variable order.  Slots beyond the context's
// variable count stay zero, so comparison does not need the context.
struct Monomial {
    static constexpr int kMaxVars = 16;
    std::array<std::uint8_t, kMaxVars> e{};

    int total_degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_unit() const { return total_degree() == 0; }
    bool operator==(const Monomial& o) const { return e == o.e; }

    Monomial times(const Monomial& o) const {
        Monomial r;
        for (int k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint8_t>(e[k] + o.e[k]);
        return r;
    }
    bool divisible_by(const Monomial& o) const {
        for (int k = 0; k < kMaxVars; ++k) {
            if (e[k] < o.e[k]) return false;
        }
        return true;
    }
    Monomial divided_by(const Monomial& o) const {
        Monomial r;
        for (int k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint8_t>(e[k] - o.e[k]);
        return r;
    }
};

// Graded lexicographic order, larger first: higher total degree wins; ties
// break on the earlier variable with the higher exponent.  Map iteration then
// starts at the leading term, which fixes the canonical serialization order.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        for (int k = 0; k < Monomial::kMaxVars; ++k) {
            if (a.e[k] != b.e[k]) return a.e[k] > b.e[k];
        }
        return false;
    }
};

// Sparse multivariate polynomial over Q(i) in canonical form: no zero
// coefficients, terms ordered graded-lex.  Immutable in spirit: operations
// return new values and never mutate arguments.
class PolyExpr {
  public:
    using Terms = std::map<Monomial, GaussianRational, GrlexGreater>;

    PolyExpr() = default;
    explicit PolyExpr(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static PolyExpr zero(ContextPtr ctx) { return PolyExpr(std::move(ctx)); }
    static PolyExpr constant(ContextPtr ctx, const GaussianRational& c);
    static PolyExpr variable(ContextPtr ctx, int flat_var);

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value of a constant polynomial (zero polynomial gives 0).
    GaussianRational constant_value() const;
    int total_degree() const;
    int degree_in(int flat_var) const;
    std::size_t term_count() const { return terms_.size(); }

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const GaussianRational& leading_coefficient() const { return terms_.begin()->second; }
    GaussianRational coefficient(const Monomial& m) const;

    PolyExpr operator-() const;
    PolyExpr operator+(const PolyExpr& o) const;
    PolyExpr operator-(const PolyExpr& o) const;
    PolyExpr operator*(const PolyExpr& o) const;
    PolyExpr scaled(const GaussianRational& c) const;
    PolyExpr pow(unsigned n) const;

    PolyExpr derivative(int flat_var) const;
    GaussianRational evaluate(const std::vector<GaussianRational>& point) const;
    // Exact division; returns false (and leaves quotient untouched) when the
    // divisor does not divide this polynomial.
    bool divide_exact(const PolyExpr& divisor, PolyExpr* quotient) const;

    bool operator==(const PolyExpr& o) const { return terms_ == o.terms_; }
    bool operator!=(const PolyExpr& o) const { return !(*this == o); }

    std::string to_string() const;

    // Internal builder used by arithmetic: inserts c*m, dropping zeros.
    void add_term(const Monomial& m, const GaussianRational& c);

  private:
    ContextPtr ctx_;
    Terms terms_;
};

}  // namespace pverify
