#pragma once

#include <gmpxx.h>

#include <string>

namespace pverify {

// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
// mpq_class keeps each part in lowest terms with a positive denominator, so
// the representation is canonical (zero is (0/1, 0/1)).
class GaussianRational {
  public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(const mpq_class& re) : re_(re), im_(0) {  // NOLINT
        re_.canonicalize();
    }
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
    // Parses "n" or "n/d" (no imaginary part; the expression parser builds i).
    static GaussianRational from_decimal_string(const std::string& text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational operator+(const GaussianRational& o) const {
        return GaussianRational(re_ + o.re_, im_ + o.im_);
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return GaussianRational(re_ - o.re_, im_ - o.im_);
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return GaussianRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussianRational operator/(const GaussianRational& o) const;
    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    GaussianRational inverse() const;
    GaussianRational conjugate() const { return GaussianRational(re_, -im_); }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    // Total order used only for deterministic tie-breaking (not a field order).
    bool operator<(const GaussianRational& o) const {
        if (int c = cmp(re_, o.re_); c != 0) return c < 0;
        return cmp(im_, o.im_) < 0;
    }

    double to_double_re() const { return re_.get_d(); }
    double to_double_im() const { return im_.get_d(); }

    // Canonical text: "0", "3", "-3/4", "i", "-i", "2*i", "1/2*i", "(1+2*i)",
    // "(1/2-3/4*i)".  Mixed re+im values are parenthesized so the printed
    // form substitutes into products without precedence surprises.
    std::string to_string() const;

  private:
    mpq_class re_, im_;
};

}  // namespace pverify
