#include "pverify/ratexpr.hpp"

#include <cassert>
#include <random>
#include <utility>

#include "pverify/errors.hpp"

namespace pverify {

namespace {

std::vector<PolyExpr> factor_dictionary(const ContextPtr& ctx) {
    auto var = [&](int v) { return PolyExpr::variable(ctx, v); };
    PolyExpr x = var(0), y = var(1), z = var(2);
    PolyExpr iy = y.scaled(GaussianRational::i());
    PolyExpr iz = z.scaled(GaussianRational::i());
    return {x, y, z, x + iy, x - iy, y + iz, y - iz};
}

}  // namespace

RatExpr::RatExpr(PolyExpr num) : num_(std::move(num)) {
    den_ = PolyExpr::constant(num_.context(), GaussianRational(1));
}

RatExpr::RatExpr(PolyExpr num, PolyExpr den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DenominatorZero("rational expression with zero denominator");
    simplify();
    normalize();
}

void RatExpr::normalize() {
    if (num_.is_zero()) {
        den_ = PolyExpr::constant(num_.context() ? num_.context() : den_.context(),
                                  GaussianRational(1));
        return;
    }
    const GaussianRational& lc = den_.leading_coefficient();
    if (!lc.is_one()) {
        GaussianRational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

void RatExpr::simplify() {
    if (den_.is_constant()) return;
    for (const PolyExpr& f : factor_dictionary(den_.context())) {
        for (;;) {
            PolyExpr qn(num_.context()), qd(den_.context());
            if (!den_.divide_exact(f, &qd)) break;
            if (!num_.divide_exact(f, &qn)) break;
            num_ = std::move(qn);
            den_ = std::move(qd);
            if (den_.is_constant()) return;
        }
    }
}

bool RatExpr::is_polynomial() const { return den_.is_constant(); }

RatExpr RatExpr::operator-() const {
    RatExpr r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatExpr RatExpr::operator+(const RatExpr& o) const {
    if (den_ == o.den_) {
        PolyExpr n = num_ + o.num_;
        if (n.is_zero()) return RatExpr(std::move(n));
        return RatExpr(std::move(n), den_);
    }
    return RatExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator-(const RatExpr& o) const {
    if (den_ == o.den_) {
        PolyExpr n = num_ - o.num_;
        if (n.is_zero()) return RatExpr(std::move(n));
        return RatExpr(std::move(n), den_);
    }
    return RatExpr(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator*(const RatExpr& o) const {
    return RatExpr(num_ * o.num_, den_ * o.den_);
}

RatExpr RatExpr::operator/(const RatExpr& o) const {
    if (o.num_.is_zero()) throw DenominatorZero("division by zero expression");
    return RatExpr(num_ * o.den_, den_ * o.num_);
}

RatExpr RatExpr::pow(int n) const {
    if (n < 0) {
        if (num_.is_zero()) throw DenominatorZero("negative power of zero expression");
        return RatExpr(den_.pow(static_cast<unsigned>(-n)), num_.pow(static_cast<unsigned>(-n)));
    }
    if (n == 0) return constant(context(), GaussianRational(1));
    if (den_.is_constant() && den_.constant_value().is_one()) {
        RatExpr r;
        r.num_ = num_.pow(static_cast<unsigned>(n));
        r.den_ = den_;
        return r;
    }
    return RatExpr(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RatExpr RatExpr::derivative(int flat_var) const {
    if (den_.is_constant()) {
        RatExpr r;
        r.num_ = num_.derivative(flat_var).scaled(den_.constant_value().inverse());
        r.den_ = PolyExpr::constant(num_.context(), GaussianRational(1));
        return r;
    }
    PolyExpr n = num_.derivative(flat_var) * den_ - num_ * den_.derivative(flat_var);
    return RatExpr(std::move(n), den_ * den_);
}

GaussianRational RatExpr::evaluate(const std::vector<GaussianRational>& point) const {
    GaussianRational d = den_.evaluate(point);
    if (d.is_zero()) throw DenominatorZero("denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
}

bool RatExpr::equals(const RatExpr& o) const {
    if (num_ == o.num_ && den_ == o.den_) return true;
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::string RatExpr::to_string() const {
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

ZeroTestResult probabilistic_zero(const RatExpr& f, long bound, int trials,
                                  unsigned long long seed) {
    assert(bound >= 1 && trials >= 1);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-bound, bound);
    const ContextPtr& ctx = f.context();
    int nv = ctx->nvars();
    ZeroTestResult result;
    for (int t = 0; t < trials; ++t) {
        const int kRetryBudget = 64;
        bool evaluated = false;
        for (int attempt = 0; attempt < kRetryBudget && !evaluated; ++attempt) {
            std::vector<GaussianRational> point;
            point.reserve(nv);
            for (int v = 0; v < nv; ++v) point.emplace_back(mpq_class(dist(rng)));
            try {
                GaussianRational val = f.evaluate(point);
                evaluated = true;
                if (!val.is_zero()) {
                    result.probably_zero = false;
                    result.witness = std::move(point);
                    return result;
                }
            } catch (const DenominatorZero&) {
                continue;
            }
        }
        if (!evaluated) {
            throw SamplingExhausted("no denominator-safe sample point found");
        }
    }
    return result;
}

}  // namespace pverify
