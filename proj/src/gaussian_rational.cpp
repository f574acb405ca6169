#include "pverify/gaussian_rational.hpp"

#include <stdexcept>

#include "pverify/errors.hpp"

namespace pverify {

GaussianRational GaussianRational::from_decimal_string(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
    q.canonicalize();
    return GaussianRational(q);
}

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
    return *this * o.inverse();
}

GaussianRational GaussianRational::inverse() const {
    mpq_class norm = re_ * re_ + im_ * im_;
    if (norm == 0) throw DenominatorZero("division by zero Gaussian rational");
    return GaussianRational(re_ / norm, -im_ / norm);
}

std::string GaussianRational::to_string() const {
    auto q_str = [](const mpq_class& q) { return q.get_str(); };
    if (im_ == 0) return q_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = q_str(im_) + "*i";
    }
    if (re_ == 0) return imag;
    std::string out = "(" + q_str(re_);
    if (imag[0] != '-') out += "+";
    out += imag + ")";
    return out;
}

}  // namespace pverify
