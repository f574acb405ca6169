#include "pverify/bracket.hpp"

namespace pverify {

std::optional<BracketConvention> BracketConvention::from_name(const std::string& name) {
    for (int k = 0; k < 4; ++k) {
        if (all(k).name() == name) return all(k);
    }
    return std::nullopt;
}

const BracketConvention& BracketConvention::all(int k) {
    static const BracketConvention conventions[4] = {
        {false, +1}, {true, +1}, {false, -1}, {true, -1}};
    return conventions[k];
}

RatExpr poisson_bracket(const RatExpr& f, const RatExpr& g, const BracketConvention& conv) {
    const ContextPtr& ctx = f.context();
    RatExpr acc = RatExpr::zero(ctx);
    for (int q = 0; q < 3; ++q) {
        int p = q + 3;
        acc = acc + f.derivative(q) * g.derivative(p) - f.derivative(p) * g.derivative(q);
    }
    if (conv.sign < 0) return -acc;
    return acc;
}

RatExpr jacobi_residual(const RatExpr& f, const RatExpr& g, const RatExpr& h,
                        const BracketConvention& conv) {
    return poisson_bracket(f, poisson_bracket(g, h, conv), conv) +
           poisson_bracket(g, poisson_bracket(h, f, conv), conv) +
           poisson_bracket(h, poisson_bracket(f, g, conv), conv);
}

RatExpr convention_hamiltonian(const RatExpr& listed_h, const BracketConvention& conv) {
    if (!conv.kinetic_half) return listed_h;
    const ContextPtr& ctx = listed_h.context();
    RatExpr kinetic = RatExpr::zero(ctx);
    for (int p = 3; p < 6; ++p) {
        kinetic = kinetic + RatExpr::variable(ctx, p) * RatExpr::variable(ctx, p);
    }
    GaussianRational half(mpq_class(1, 2));
    return listed_h - kinetic * RatExpr::constant(ctx, half);
}

}  // namespace pverify
