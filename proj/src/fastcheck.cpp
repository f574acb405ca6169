#include "pverify/fastcheck.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "pverify/bracket.hpp"
#include "pverify/errors.hpp"

namespace pverify {

namespace {

constexpr long kPointBound = 1000000;
constexpr int kResampleBudget = 64;

}  // namespace

Jet Jet::constant(const GaussianRational& v, int order) {
    Jet j(order);
    j.v_ = v;
    return j;
}

Jet Jet::phase_variable(int flat, const GaussianRational& value, int order) {
    Jet j(order);
    j.v_ = value;
    if (order >= 1) j.g_[flat] = GaussianRational(1);
    return j;
}

Jet Jet::operator+(const Jet& o) const {
    Jet r(std::min(order_, o.order_));
    r.v_ = v_ + o.v_;
    if (r.order_ >= 1) {
        for (int k = 0; k < 6; ++k) r.g_[k] = g_[k] + o.g_[k];
    }
    if (r.order_ >= 2) {
        for (int k = 0; k < 21; ++k) r.h_[k] = h_[k] + o.h_[k];
    }
    return r;
}

Jet Jet::operator-(const Jet& o) const { return *this + (-o); }

Jet Jet::operator-() const {
    Jet r(order_);
    r.v_ = -v_;
    if (order_ >= 1) {
        for (int k = 0; k < 6; ++k) r.g_[k] = -g_[k];
    }
    if (order_ >= 2) {
        for (int k = 0; k < 21; ++k) r.h_[k] = -h_[k];
    }
    return r;
}

Jet Jet::operator*(const Jet& o) const {
    Jet r(std::min(order_, o.order_));
    r.v_ = v_ * o.v_;
    if (r.order_ >= 1) {
        for (int k = 0; k < 6; ++k) r.g_[k] = v_ * o.g_[k] + o.v_ * g_[k];
    }
    if (r.order_ >= 2) {
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                int k = hidx(i, j);
                r.h_[k] = v_ * o.h_[k] + o.v_ * h_[k] + g_[i] * o.g_[j] + g_[j] * o.g_[i];
            }
        }
    }
    return r;
}

Jet Jet::inverse() const {
    if (v_.is_zero()) throw DenominatorZero("jet division by zero at the sample point");
    Jet r(order_);
    GaussianRational w = v_.inverse();
    GaussianRational w2 = w * w;
    r.v_ = w;
    if (order_ >= 1) {
        for (int k = 0; k < 6; ++k) r.g_[k] = -(w2 * g_[k]);
    }
    if (order_ >= 2) {
        GaussianRational two_w3 = GaussianRational(2) * w2 * w;
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                int k = hidx(i, j);
                r.h_[k] = two_w3 * g_[i] * g_[j] - w2 * h_[k];
            }
        }
    }
    return r;
}

Jet Jet::operator/(const Jet& o) const { return *this * o.inverse(); }

Jet Jet::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Jet r = Jet::constant(GaussianRational(1), order_);
    Jet base = *this;
    for (unsigned n = static_cast<unsigned>(e); n != 0; n >>= 1) {
        if (n & 1) r = r * base;
        if (n > 1) base = base * base;
    }
    return r;
}

Jet Jet::bracket(const Jet& f, const Jet& g, int sign) {
    int in = std::min(f.order_, g.order_);
    if (in < 1) throw std::logic_error("Poisson bracket exceeds the jet order at the leaves");
    Jet r(in - 1);
    GaussianRational v;
    for (int q = 0; q < 3; ++q) v += f.g_[q] * g.g_[q + 3] - f.g_[q + 3] * g.g_[q];
    r.v_ = sign < 0 ? -v : v;
    if (r.order_ >= 1) {
        for (int k = 0; k < 6; ++k) {
            GaussianRational d;
            for (int q = 0; q < 3; ++q) {
                d += f.h_[hidx(q, k)] * g.g_[q + 3] + f.g_[q] * g.h_[hidx(q + 3, k)];
                d -= f.h_[hidx(q + 3, k)] * g.g_[q] + f.g_[q + 3] * g.h_[hidx(q, k)];
            }
            r.g_[k] = sign < 0 ? -d : d;
        }
    }
    return r;
}

namespace {

Jet jet_of_poly(const PolyExpr& p, const std::vector<GaussianRational>& point,
                const std::array<Jet, 6>& vars, int order) {
    Jet acc = Jet::constant(GaussianRational(0), order);
    for (const auto& [mono, coeff] : p.terms()) {
        GaussianRational scalar = coeff;
        for (int v = 6; v < Monomial::kMaxVars; ++v) {
            for (int e = mono.e[v]; e > 0; --e) scalar *= point[v];
        }
        Jet term = Jet::constant(scalar, order);
        for (int v = 0; v < 6; ++v) {
            if (mono.e[v] > 0) term = term * vars[v].pow(mono.e[v]);
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace

Jet jet_of(const RatExpr& f, const std::vector<GaussianRational>& point, int order) {
    std::array<Jet, 6> vars = {
        Jet::phase_variable(0, point[0], order), Jet::phase_variable(1, point[1], order),
        Jet::phase_variable(2, point[2], order), Jet::phase_variable(3, point[3], order),
        Jet::phase_variable(4, point[4], order), Jet::phase_variable(5, point[5], order)};
    Jet num = jet_of_poly(f.num(), point, vars, order);
    if (f.is_polynomial()) return num;
    return num / jet_of_poly(f.den(), point, vars, order);
}

namespace {

// Resolves relation symbols to jets at one sample point, memoizing by name.
class PointEvaluator {
  public:
    PointEvaluator(const SystemDefinition& sys, const BracketConvention& conv,
                   const std::vector<GaussianRational>& point)
        : sys_(sys), conv_(conv), point_(point) {}

    Jet evaluate(const FormalPtr& e) {
        switch (e->kind) {
            case FormalKind::Number: return Jet::constant(e->number);
            case FormalKind::Symbol: return resolve(e->symbol);
            case FormalKind::Add: return evaluate(e->a) + evaluate(e->b);
            case FormalKind::Sub: return evaluate(e->a) - evaluate(e->b);
            case FormalKind::Mul: return evaluate(e->a) * evaluate(e->b);
            case FormalKind::Div: return evaluate(e->a) / evaluate(e->b);
            case FormalKind::Neg: return -evaluate(e->a);
            case FormalKind::Pow: return evaluate(e->a).pow(e->exponent);
            case FormalKind::Bracket:
                return Jet::bracket(evaluate(e->a), evaluate(e->b), conv_.sign);
            case FormalKind::Pd: return evaluate(formal_derivative(e->a, e->symbol));
        }
        throw std::logic_error("unhandled formal node");
    }

    Jet resolve(const std::string& name) {
        auto hit = cache_.find(name);
        if (hit != cache_.end()) return hit->second;
        Jet j = resolve_fresh(name);
        cache_.emplace(name, j);
        return j;
    }

  private:
    Jet resolve_fresh(const std::string& name) {
        if (auto flat = sys_.context->find(name)) {
            if (*flat < Context::kPhaseVars) return Jet::phase_variable(*flat, point_[*flat]);
            return Jet::constant(point_[*flat]);
        }
        if (sys_.has_generator(name)) {
            if (name == "H") return jet_of(convention_hamiltonian(sys_.generator("H"), conv_), point_);
            return jet_of(sys_.generator(name), point_);
        }
        if (const NamedBracket* nb = sys_.find_named_bracket(name)) {
            return Jet::bracket(resolve(nb->lhs), resolve(nb->rhs), conv_.sign);
        }
        if (const FormalPtr* def = sys_.find_define(name)) return evaluate(*def);
        throw UnresolvedName(name);
    }

    const SystemDefinition& sys_;
    BracketConvention conv_;
    const std::vector<GaussianRational>& point_;
    std::map<std::string, Jet> cache_;
};

std::vector<GaussianRational> sample_point(const SystemDefinition& sys, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> mag(1, kPointBound);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<GaussianRational> point;
    point.reserve(sys.context->nvars());
    for (int v = 0; v < sys.context->nvars(); ++v) {
        long m = mag(rng);
        point.emplace_back(mpq_class(coin(rng) ? m : -m));
    }
    return point;
}

FastVerdict adjudicate(const SystemDefinition& sys, const Relation& rel,
                       const BracketConvention& conv, int trials, std::mt19937_64& rng) {
    FastVerdict out;
    out.relation = rel;
    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= kResampleBudget) {
                throw SamplingExhausted("fast check: no denominator-safe point for relation " +
                                        rel.provenance);
            }
            std::vector<GaussianRational> point = sample_point(sys, rng);
            try {
                PointEvaluator ev(sys, conv, point);
                GaussianRational residual =
                    (ev.evaluate(rel.lhs) - ev.evaluate(rel.rhs)).value();
                ++out.trials;
                if (!residual.is_zero()) {
                    out.refuted = true;
                    out.residual_value = residual;
                    out.witness = std::move(point);
                    return out;
                }
                break;
            } catch (const DenominatorZero&) {
                continue;
            }
        }
    }
    return out;
}

}  // namespace

FastVerdict fast_verify_relation(const SystemDefinition& sys, const Relation& rel,
                                 const BracketConvention& conv, int trials,
                                 unsigned long long seed) {
    std::mt19937_64 rng(seed);
    return adjudicate(sys, rel, conv, trials, rng);
}

std::vector<FastVerdict> fast_verify_all(const SystemDefinition& sys,
                                         const BracketConvention& conv, int trials,
                                         unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<FastVerdict> out;
    out.reserve(sys.relations.size());
    for (const Relation& rel : sys.relations) {
        out.push_back(adjudicate(sys, rel, conv, trials, rng));
    }
    return out;
}

std::vector<FastVerdict> fast_verify_structure_claims(const SystemDefinition& sys,
                                                      const BracketConvention& conv, int trials,
                                                      unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<FastVerdict> out;
    out.reserve(sys.structure_claims.size());
    for (const StructureClaim& claim : sys.structure_claims) {
        Relation rel;
        rel.lhs = FormalExpr::make_pow(FormalExpr::make_symbol(claim.squared_name), 2);
        rel.rhs = claim.rhs;
        rel.provenance = "structure: " + claim.squared_name + "^2";
        out.push_back(adjudicate(sys, rel, conv, trials, rng));
    }
    return out;
}

}  // namespace pverify
