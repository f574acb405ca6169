#pragma once

#include <string>
#include <vector>

#include "pverify/poly.hpp"

namespace pverify {

// Quotient of two polynomials.  Invariants: the denominator is nonzero and
// monic under the graded-lex order.  Equality is decided by
// cross-multiplication, so correctness never depends on how far the quotient
// was simplified; simplification only keeps sizes manageable by trial
// division against the small factor dictionary the catalog denominators are
// built from ({x, y, z, x+iy, x-iy, y+iz, y-iz}).
class RatExpr {
  public:
    RatExpr() = default;
    explicit RatExpr(PolyExpr num);
    RatExpr(PolyExpr num, PolyExpr den);

    static RatExpr zero(ContextPtr ctx) { return RatExpr(PolyExpr::zero(std::move(ctx))); }
    static RatExpr constant(ContextPtr ctx, const GaussianRational& c) {
        return RatExpr(PolyExpr::constant(std::move(ctx), c));
    }
    static RatExpr variable(ContextPtr ctx, int flat_var) {
        return RatExpr(PolyExpr::variable(std::move(ctx), flat_var));
    }

    const PolyExpr& num() const { return num_; }
    const PolyExpr& den() const { return den_; }
    const ContextPtr& context() const { return num_.context(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const;

    RatExpr operator-() const;
    RatExpr operator+(const RatExpr& o) const;
    RatExpr operator-(const RatExpr& o) const;
    RatExpr operator*(const RatExpr& o) const;
    RatExpr operator/(const RatExpr& o) const;
    RatExpr pow(int n) const;

    RatExpr derivative(int flat_var) const;
    GaussianRational evaluate(const std::vector<GaussianRational>& point) const;

    // Exact identity test by cross-multiplication.
    bool equals(const RatExpr& o) const;
    // Structural equality of the normalized representation (used for
    // round-trip checks; implies equals()).
    bool operator==(const RatExpr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatExpr& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    void normalize();
    void simplify();

    PolyExpr num_, den_;
};

// Outcome of the probabilistic zero test: either "probably zero" (one-sided;
// error probability bounded by Schwartz-Zippel) or a witness point where the
// expression evaluates to a nonzero value.
struct ZeroTestResult {
    bool probably_zero = true;
    std::vector<GaussianRational> witness;
};

// Samples integer points uniformly in [-bound, bound], resampling when a
// denominator vanishes.  Throws SamplingExhausted after a fixed retry budget.
ZeroTestResult probabilistic_zero(const RatExpr& f, long bound, int trials,
                                  unsigned long long seed);

}  // namespace pverify
