#pragma once

#include <array>
#include <string>
#include <vector>

#include "pverify/system.hpp"
#include "pverify/verifier.hpp"

namespace pverify {

// Order-2 jet of a phase-space function at one point: value, gradient and
// Hessian over the six phase variables, all exact in Q(i).  Every
// Poisson-bracket node consumes one derivative level (its value needs the
// operands' gradients, its gradient their Hessians), so order-2 leaves
// support brackets nested two deep — enough for every catalog relation.
class Jet {
  public:
    static Jet constant(const GaussianRational& v, int order = 2);
    // The flat phase variable `flat` (< 6) with the given value at the point.
    static Jet phase_variable(int flat, const GaussianRational& value, int order = 2);

    int order() const { return order_; }
    const GaussianRational& value() const { return v_; }
    const GaussianRational& gradient(int flat) const { return g_[flat]; }
    const GaussianRational& hessian(int i, int j) const { return h_[hidx(i, j)]; }

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator-() const;
    Jet operator*(const Jet& o) const;
    // Throws DenominatorZero when the divisor's value vanishes at the point.
    Jet operator/(const Jet& o) const;
    Jet pow(int e) const;  // any integer exponent; negative inverts first

    // sign * sum_q (df/dq dg/dp_q - df/dp_q dg/dq).  Operands need order >= 1;
    // the result's order is one less than their minimum.
    static Jet bracket(const Jet& f, const Jet& g, int sign);

  private:
    explicit Jet(int order) : order_(order) {}
    Jet inverse() const;
    // Upper-triangle index for the symmetric Hessian, i <= j after swapping.
    static int hidx(int i, int j) {
        if (i > j) std::swap(i, j);
        return i * (13 - i) / 2 + (j - i);
    }

    int order_;
    GaussianRational v_;
    std::array<GaussianRational, 6> g_{};
    std::array<GaussianRational, 21> h_{};
};

// Evaluates a rational expression as a jet at `point` (six phase values then
// parameter values in context order).  Throws DenominatorZero when the
// denominator vanishes at the point.
Jet jet_of(const RatExpr& f, const std::vector<GaussianRational>& point, int order = 2);

// Probabilistic adjudication of one relation by exact evaluation at random
// integer points, without ever expanding a bracket symbolically.  A nonzero
// residual value is an unconditional refutation certificate; residual zero at
// every sampled point leaves "verified" merely probable (Schwartz-Zippel),
// which is why acceptance runs use the exact verifier instead.
struct FastVerdict {
    Relation relation;
    bool refuted = false;
    GaussianRational residual_value;        // residual at the witness when refuted
    std::vector<GaussianRational> witness;  // refuting point (phase then parameters)
    int trials = 0;                         // points actually adjudicated

    bool ok() const { return !refuted; }
};

FastVerdict fast_verify_relation(const SystemDefinition& sys, const Relation& rel,
                                 const BracketConvention& conv = {}, int trials = 5,
                                 unsigned long long seed = kDefaultSeed);

// Every declared relation, in declaration order.
std::vector<FastVerdict> fast_verify_all(const SystemDefinition& sys,
                                         const BracketConvention& conv = {}, int trials = 5,
                                         unsigned long long seed = kDefaultSeed);

// The squared-bracket claims C^2 = rhs, in declaration order.
std::vector<FastVerdict> fast_verify_structure_claims(const SystemDefinition& sys,
                                                      const BracketConvention& conv = {},
                                                      int trials = 5,
                                                      unsigned long long seed = kDefaultSeed);

}  // namespace pverify
