#pragma once

#include <optional>
#include <string>

#include "pverify/ratexpr.hpp"

namespace pverify {

// Bracket/Hamiltonian convention.  The sign flips the whole bracket; the
// kinetic_half flag states whether the Hamiltonian carries the 1/2 on its
// kinetic part.  The default (no half, +1) is what the catalog listings
// validate under; the other three combinations exist so a failed conservation
// check can report which convention, if any, would have validated.
struct BracketConvention {
    bool kinetic_half = false;
    int sign = +1;

    bool operator==(const BracketConvention& o) const {
        return kinetic_half == o.kinetic_half && sign == o.sign;
    }

    std::string name() const {
        if (!kinetic_half && sign > 0) return "default";
        if (kinetic_half && sign > 0) return "half";
        if (!kinetic_half && sign < 0) return "neg";
        return "half-neg";
    }

    static std::optional<BracketConvention> from_name(const std::string& name);
    static const BracketConvention& all(int k);  // k in [0,4): enumeration order
};

// Canonical Poisson bracket
//   {f,g} = sign * sum_q (df/dq dg/dp_q - df/dp_q dg/dq),  q in {x,y,z}.
RatExpr poisson_bracket(const RatExpr& f, const RatExpr& g,
                        const BracketConvention& conv = BracketConvention{});

// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}; identically zero for any inputs.
RatExpr jacobi_residual(const RatExpr& f, const RatExpr& g, const RatExpr& h,
                        const BracketConvention& conv = BracketConvention{});

// The Hamiltonian as seen under the convention: with kinetic_half set, the
// p_x^2+p_y^2+p_z^2 part of the listed H is halved.
RatExpr convention_hamiltonian(const RatExpr& listed_h, const BracketConvention& conv);

}  // namespace pverify
