#include "pverify/poly.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace pverify {

PolyExpr PolyExpr::constant(ContextPtr ctx, const GaussianRational& c) {
    PolyExpr p(std::move(ctx));
    if (!c.is_zero()) p.terms_.emplace(Monomial{}, c);
    return p;
}

PolyExpr PolyExpr::variable(ContextPtr ctx, int flat_var) {
    assert(flat_var >= 0 && flat_var < ctx->nvars());
    PolyExpr p(std::move(ctx));
    Monomial m;
    m.e[flat_var] = 1;
    p.terms_.emplace(m, GaussianRational(1));
    return p;
}

bool PolyExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

GaussianRational PolyExpr::constant_value() const {
    assert(is_constant());
    return terms_.empty() ? GaussianRational(0) : terms_.begin()->second;
}

int PolyExpr::total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

int PolyExpr::degree_in(int flat_var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[flat_var]));
    return d;
}

GaussianRational PolyExpr::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

void PolyExpr::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyExpr PolyExpr::operator-() const {
    PolyExpr r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

PolyExpr PolyExpr::operator+(const PolyExpr& o) const {
    assert(!ctx_ || !o.ctx_ || ctx_->same_as(*o.ctx_));
    PolyExpr r = *this;
    if (!r.ctx_) r.ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

PolyExpr PolyExpr::operator-(const PolyExpr& o) const {
    assert(!ctx_ || !o.ctx_ || ctx_->same_as(*o.ctx_));
    PolyExpr r = *this;
    if (!r.ctx_) r.ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

PolyExpr PolyExpr::operator*(const PolyExpr& o) const {
    assert(!ctx_ || !o.ctx_ || ctx_->same_as(*o.ctx_));
    PolyExpr r(ctx_ ? ctx_ : o.ctx_);
    if (terms_.empty() || o.terms_.empty()) return r;
    // Collect all products, then sort-and-combine; faster than map insertion
    // for the large products the bracket computations generate.
    std::vector<std::pair<Monomial, GaussianRational>> prods;
    prods.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            prods.emplace_back(ma.times(mb), ca * cb);
        }
    }
    GrlexGreater before;
    std::sort(prods.begin(), prods.end(),
              [&](const auto& a, const auto& b) { return before(a.first, b.first); });
    auto hint = r.terms_.end();
    std::size_t k = 0;
    while (k < prods.size()) {
        Monomial m = prods[k].first;
        GaussianRational c = std::move(prods[k].second);
        ++k;
        while (k < prods.size() && prods[k].first == m) {
            c += prods[k].second;
            ++k;
        }
        if (!c.is_zero()) hint = r.terms_.emplace_hint(hint, m, std::move(c));
    }
    return r;
}

PolyExpr PolyExpr::scaled(const GaussianRational& c) const {
    PolyExpr r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

PolyExpr PolyExpr::pow(unsigned n) const {
    PolyExpr r = constant(ctx_, GaussianRational(1));
    PolyExpr base = *this;
    while (n > 0) {
        if (n & 1U) r = r * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return r;
}

PolyExpr PolyExpr::derivative(int flat_var) const {
    PolyExpr r(ctx_);
    for (const auto& [m, c] : terms_) {
        if (m.e[flat_var] == 0) continue;
        Monomial dm = m;
        dm.e[flat_var] -= 1;
        r.add_term(dm, c * GaussianRational(static_cast<long>(m.e[flat_var])));
    }
    return r;
}

GaussianRational PolyExpr::evaluate(const std::vector<GaussianRational>& point) const {
    assert(static_cast<int>(point.size()) >= (ctx_ ? ctx_->nvars() : 0));
    // Power tables keep the bignum exponentiation work linear in the degree.
    std::vector<std::vector<GaussianRational>> powers(point.size());
    for (std::size_t v = 0; v < point.size(); ++v) {
        int maxdeg = degree_in(static_cast<int>(v));
        powers[v].reserve(maxdeg + 1);
        powers[v].emplace_back(1);
        for (int k = 1; k <= maxdeg; ++k) powers[v].push_back(powers[v].back() * point[v]);
    }
    GaussianRational acc(0);
    for (const auto& [m, c] : terms_) {
        GaussianRational t = c;
        for (std::size_t v = 0; v < point.size(); ++v) {
            if (m.e[v] != 0) t *= powers[v][m.e[v]];
        }
        acc += t;
    }
    return acc;
}

bool PolyExpr::divide_exact(const PolyExpr& divisor, PolyExpr* quotient) const {
    assert(!divisor.is_zero());
    PolyExpr q(ctx_);
    PolyExpr rem = *this;
    const Monomial& dlm = divisor.leading_monomial();
    GaussianRational dlc_inv = divisor.leading_coefficient().inverse();
    while (!rem.is_zero()) {
        const Monomial& rlm = rem.leading_monomial();
        if (!rlm.divisible_by(dlm)) return false;
        Monomial qm = rlm.divided_by(dlm);
        GaussianRational qc = rem.leading_coefficient() * dlc_inv;
        PolyExpr t(ctx_);
        t.terms_.emplace(qm, qc);
        q.add_term(qm, qc);
        rem = rem - t * divisor;
    }
    *quotient = std::move(q);
    return true;
}

std::string PolyExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        GaussianRational coeff = c;
        std::string sign;
        if (first) {
            // Leading sign folds into the coefficient text.
        } else if (coeff.is_real() && coeff.re() < 0) {
            sign = " - ";
            coeff = -coeff;
        } else if (!coeff.is_real() && coeff.re() == 0 && coeff.im() < 0) {
            sign = " - ";
            coeff = -coeff;
        } else {
            sign = " + ";
        }
        std::string mon;
        for (int v = 0; v < Monomial::kMaxVars; ++v) {
            if (m.e[v] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += ctx_->name(v);
            if (m.e[v] > 1) mon += "^" + std::to_string(m.e[v]);
        }
        std::string term;
        if (mon.empty()) {
            term = coeff.to_string();
        } else if (coeff.is_one()) {
            term = mon;
        } else if ((-coeff).is_one()) {
            term = "-" + mon;
        } else {
            term = coeff.to_string() + "*" + mon;
        }
        out += sign + term;
        first = false;
    }
    return out;
}

}  // namespace pverify
