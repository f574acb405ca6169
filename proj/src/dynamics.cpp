#include "pverify/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "pverify/errors.hpp"

namespace pverify {

namespace {

mpq_class rational_pow(const mpq_class& base, unsigned e) {
    mpq_class r(1);
    for (unsigned k = 0; k < e; ++k) r *= base;
    return r;
}

PolyExpr substitute_into_poly(const PolyExpr& p, const ParamValues& values) {
    const Context& ctx = *p.context();
    PolyExpr out(p.context());
    for (const auto& [m, c] : p.terms()) {
        GaussianRational scaled = c;
        Monomial phase;
        for (int v = 0; v < ctx.nvars(); ++v) {
            if (v < Context::kPhaseVars) {
                phase.e[v] = m.e[v];
                continue;
            }
            if (m.e[v] == 0) continue;
            const std::string& name = ctx.parameter_names()[v - Context::kPhaseVars];
            auto it = values.find(name);
            if (it == values.end()) throw UnboundName("parameter " + name);
            scaled *= GaussianRational(rational_pow(it->second, m.e[v]));
        }
        if (!scaled.is_zero()) out.add_term(phase, scaled);
    }
    return out;
}

std::string term_text(const Context& ctx, const Monomial& m, const GaussianRational& c) {
    std::string s = c.to_string();
    for (int v = 0; v < ctx.nvars(); ++v) {
        if (m.e[v] == 0) continue;
        s += "*" + ctx.name(v);
        if (m.e[v] > 1) s += "^" + std::to_string(int(m.e[v]));
    }
    return s;
}

void append_real_terms(const PolyExpr& p, std::vector<CompiledExpr::Term>* out) {
    for (const auto& [m, c] : p.terms()) {
        if (c.im() != 0)
            throw ComplexResidue("nonzero imaginary part after substitution: " +
                                 term_text(*p.context(), m, c));
        CompiledExpr::Term t;
        for (int v = 0; v < Context::kPhaseVars; ++v) t.e[v] = m.e[v];
        t.c = c.to_double_re();
        out->push_back(t);
    }
}

int momentum_degree(const Monomial& m) { return m.e[3] + m.e[4] + m.e[5]; }

// H after convention resolution and parameter substitution, split into the
// kinetic coefficient k (H = k p^2 + V) and the momentum-free potential.
struct SplitHamiltonian {
    double k = 1;
    RatExpr potential;
};

SplitHamiltonian split_hamiltonian(const RatExpr& h) {
    for (int v = 3; v < Context::kPhaseVars; ++v) {
        if (h.den().degree_in(v) > 0)
            throw std::invalid_argument("Hamiltonian denominator depends on momenta");
    }
    PolyExpr kinetic(h.context()), v_num(h.context());
    for (const auto& [m, c] : h.num().terms()) {
        switch (momentum_degree(m)) {
            case 0: v_num.add_term(m, c); break;
            case 2: kinetic.add_term(m, c); break;
            default:
                throw std::invalid_argument("Hamiltonian is not kinetic(p) + V(q): term " +
                                            term_text(*h.context(), m, c));
        }
    }
    PolyExpr quot;
    if (!kinetic.divide_exact(h.den(), &quot))
        throw std::invalid_argument("Hamiltonian is not kinetic(p) + V(q)");
    PolyExpr psq(h.context());
    for (int v = 3; v < Context::kPhaseVars; ++v) {
        Monomial m;
        m.e[v] = 2;
        psq.add_term(m, GaussianRational(1));
    }
    GaussianRational k = quot.leading_coefficient();
    if (quot != psq.scaled(k) || k.im() != 0 || k.re() <= 0)
        throw std::invalid_argument(
            "Hamiltonian kinetic part is not a positive multiple of p_x^2+p_y^2+p_z^2");
    return {k.to_double_re(), RatExpr(std::move(v_num), h.den())};
}

const char* kCoordNames[3] = {"x", "y", "z"};

// Shared integration core: velocity-Verlet on qdot = 2k p, pdot = -grad V,
// guarding the margin on every coordinate some compiled denominator uses.
struct Stepper {
    double two_k = 2;
    CompiledExpr grad[3];
    std::array<bool, 3> guarded{};
    double margin = kSingularityMargin;

    void check(const PhasePoint& s, double t) const {
        for (int c = 0; c < 3; ++c) {
            if (guarded[c] && std::abs(s.q[c]) <= margin)
                throw SingularityApproach("|" + std::string(kCoordNames[c]) + "| <= " +
                                          std::to_string(margin) + " at t = " + std::to_string(t));
        }
        for (int c = 0; c < 3; ++c) {
            if (!std::isfinite(s.q[c]) || !std::isfinite(s.p[c]))
                throw SingularityApproach("non-finite state at t = " + std::to_string(t));
        }
    }

    void step(PhasePoint& s, double dt) const {
        for (int c = 0; c < 3; ++c) s.p[c] -= 0.5 * dt * grad[c](s);
        for (int c = 0; c < 3; ++c) s.q[c] += dt * two_k * s.p[c];
        for (int c = 0; c < 3; ++c) s.p[c] -= 0.5 * dt * grad[c](s);
    }
};

void absorb_flags(const CompiledExpr& e, std::array<bool, 3>* flags) {
    for (int c = 0; c < 3; ++c) {
        if (e.den_uses_coordinate(c)) (*flags)[c] = true;
    }
}

Stepper make_stepper(const SystemDefinition& sys, const ParamValues& params,
                     const BracketConvention& conv, const IntegrationSpec& spec,
                     const std::array<bool, 3>& extra_guards) {
    RatExpr h = substitute_parameters(convention_hamiltonian(sys.generator("H"), conv), params);
    SplitHamiltonian split = split_hamiltonian(h);
    Stepper st;
    st.two_k = 2 * split.k;
    st.margin = spec.margin;
    st.guarded = extra_guards;
    for (int c = 0; c < 3; ++c) {
        st.grad[c] = compile_numeric(split.potential.derivative(c), {});
        absorb_flags(st.grad[c], &st.guarded);
    }
    return st;
}

long long step_count(const IntegrationSpec& spec) {
    if (spec.dt == 0 || !std::isfinite(spec.dt)) throw std::invalid_argument("invalid step size");
    if (spec.horizon <= 0 || !std::isfinite(spec.horizon))
        throw std::invalid_argument("invalid horizon");
    long long n = std::llround(spec.horizon / std::abs(spec.dt));
    if (n < 1) throw std::invalid_argument("horizon shorter than one step");
    return n;
}

void check_start(const PhasePoint& start) {
    for (int c = 0; c < 3; ++c) {
        if (!std::isfinite(start.q[c]) || !std::isfinite(start.p[c]))
            throw std::invalid_argument("non-finite start point");
    }
}

// Generators in catalog order with H replaced by its convention form,
// compiled for the run.
std::vector<std::pair<std::string, CompiledExpr>> compile_generators(
    const SystemDefinition& sys, const ParamValues& params, const BracketConvention& conv) {
    std::vector<std::pair<std::string, CompiledExpr>> out;
    for (const auto& name : sys.generator_order) {
        const RatExpr& listed = sys.generator(name);
        out.emplace_back(name, compile_numeric(name == "H" ? convention_hamiltonian(listed, conv)
                                                           : listed,
                                               params));
    }
    return out;
}

std::vector<DriftReport> drift_of(const SystemDefinition& sys, const ParamValues& params,
                                  const PhasePoint& start, const IntegrationSpec& spec,
                                  const BracketConvention& conv,
                                  const std::vector<std::pair<std::string, CompiledExpr>>& exprs) {
    check_start(start);
    std::array<bool, 3> guards{};
    for (const auto& [name, e] : exprs) absorb_flags(e, &guards);
    Stepper st = make_stepper(sys, params, conv, spec, guards);
    long long steps = step_count(spec);

    PhasePoint s = start;
    st.check(s, 0);
    std::vector<double> initial(exprs.size()), max_abs(exprs.size(), 0.0);
    for (std::size_t i = 0; i < exprs.size(); ++i) initial[i] = exprs[i].second(s);
    for (long long k = 1; k <= steps; ++k) {
        st.step(s, spec.dt);
        st.check(s, double(k) * spec.dt);
        for (std::size_t i = 0; i < exprs.size(); ++i) {
            double dev = std::abs(exprs[i].second(s) - initial[i]);
            if (dev > max_abs[i]) max_abs[i] = dev;
        }
    }

    std::vector<DriftReport> reports(exprs.size());
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        reports[i].name = exprs[i].first;
        reports[i].initial = initial[i];
        reports[i].max_relative_drift = max_abs[i] / std::max(std::abs(initial[i]), kDriftFloor);
        reports[i].dt = spec.dt;
        reports[i].horizon = spec.horizon;
    }
    return reports;
}

}  // namespace

RatExpr substitute_parameters(const RatExpr& expr, const ParamValues& values) {
    return RatExpr(substitute_into_poly(expr.num(), values),
                   substitute_into_poly(expr.den(), values));
}

double CompiledExpr::eval_terms(const std::vector<Term>& terms, const double* vals) {
    double sum = 0;
    for (const Term& t : terms) {
        double prod = t.c;
        for (int v = 0; v < Context::kPhaseVars; ++v) {
            for (int k = 0; k < t.e[v]; ++k) prod *= vals[v];
        }
        sum += prod;
    }
    return sum;
}

double CompiledExpr::operator()(const PhasePoint& s) const {
    double vals[Context::kPhaseVars] = {s.q[0], s.q[1], s.q[2], s.p[0], s.p[1], s.p[2]};
    double num = eval_terms(num_, vals);
    return den_.empty() ? num : num / eval_terms(den_, vals);
}

CompiledExpr compile_numeric(const RatExpr& expr, const ParamValues& params) {
    RatExpr real = substitute_parameters(expr, params);
    CompiledExpr out;
    append_real_terms(real.num(), &out.num_);
    if (!real.den().is_constant()) {
        append_real_terms(real.den(), &out.den_);
        for (int c = 0; c < 3; ++c) out.den_coords_[c] = real.den().degree_in(c) > 0;
    } else if (!real.den().constant_value().is_one()) {
        append_real_terms(real.den(), &out.den_);
    }
    return out;
}

std::vector<TrajectorySample> integrate(const SystemDefinition& sys, const ParamValues& params,
                                        const PhasePoint& start, const IntegrationSpec& spec,
                                        const BracketConvention& conv) {
    check_start(start);
    Stepper st = make_stepper(sys, params, conv, spec, {});
    long long steps = step_count(spec);

    std::vector<TrajectorySample> samples;
    samples.reserve(std::size_t(steps) + 1);
    PhasePoint s = start;
    st.check(s, 0);
    samples.push_back({0.0, s});
    for (long long k = 1; k <= steps; ++k) {
        st.step(s, spec.dt);
        double t = double(k) * spec.dt;
        st.check(s, t);
        samples.push_back({t, s});
    }
    return samples;
}

std::vector<DriftReport> conservation_drift(const SystemDefinition& sys,
                                            const ParamValues& params, const PhasePoint& start,
                                            const IntegrationSpec& spec,
                                            const BracketConvention& conv) {
    return drift_of(sys, params, start, spec, conv, compile_generators(sys, params, conv));
}

DriftReport expression_drift(const SystemDefinition& sys, const RatExpr& expr,
                             const std::string& label, const ParamValues& params,
                             const PhasePoint& start, const IntegrationSpec& spec,
                             const BracketConvention& conv) {
    std::vector<std::pair<std::string, CompiledExpr>> one;
    one.emplace_back(label, compile_numeric(expr, params));
    return drift_of(sys, params, start, spec, conv, one).front();
}

void write_trajectory_csv(std::ostream& out, const SystemDefinition& sys,
                          const ParamValues& params, const PhasePoint& start,
                          const IntegrationSpec& spec, int stride,
                          const BracketConvention& conv) {
    if (stride < 1) throw std::invalid_argument("stride must be at least 1");
    check_start(start);
    auto exprs = compile_generators(sys, params, conv);
    std::array<bool, 3> guards{};
    for (const auto& [name, e] : exprs) absorb_flags(e, &guards);
    Stepper st = make_stepper(sys, params, conv, spec, guards);
    long long steps = step_count(spec);

    out << "t,x,y,z,p_x,p_y,p_z";
    for (const auto& [name, e] : exprs) out << ',' << name;
    out << '\n';
    out << std::setprecision(17);
    auto row = [&](double t, const PhasePoint& s) {
        out << t;
        for (int c = 0; c < 3; ++c) out << ',' << s.q[c];
        for (int c = 0; c < 3; ++c) out << ',' << s.p[c];
        for (const auto& [name, e] : exprs) out << ',' << e(s);
        out << '\n';
    };

    PhasePoint s = start;
    st.check(s, 0);
    row(0.0, s);
    for (long long k = 1; k <= steps; ++k) {
        st.step(s, spec.dt);
        double t = double(k) * spec.dt;
        st.check(s, t);
        if (k % stride == 0 || k == steps) row(t, s);
    }
}

}  // namespace pverify
