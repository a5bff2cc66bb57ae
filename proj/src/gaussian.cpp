#include "crinv/gaussian.hpp"

#include <stdexcept>

namespace crinv {

Gaussian Gaussian::inverse() const {
    mpq_class n = norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
    return Gaussian(re_ / n, -im_ / n);
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

std::string Gaussian::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string imag;
    if (im_ == 1) imag = "i";
    else if (im_ == -1) imag = "-i";
    else imag = rational_str(im_) + "i";
    if (sgn(re_) == 0) return imag;
    std::string out = rational_str(re_);
    if (imag[0] != '-') out += "+";
    return out + imag;
}

}  // namespace crinv
