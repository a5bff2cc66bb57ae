#pragma once

#include <gmpxx.h>

#include <string>

namespace crinv {

// a + b i with a, b exact rationals.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long v) : re_(v), im_(0) {}
    Gaussian(mpq_class re) : re_(std::move(re)), im_(0) {}
    Gaussian(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian i() { return Gaussian(0, 1); }
    static Gaussian frac(long p, long q) { mpq_class v{mpz_class(p), mpz_class(q)}; v.canonicalize(); return Gaussian(v); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Gaussian conj() const { return Gaussian(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    Gaussian inverse() const;

    Gaussian& operator+=(const Gaussian& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Gaussian& operator-=(const Gaussian& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    Gaussian operator-() const { return Gaussian(-re_, -im_); }

    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    // Canonical text: "3/2", "-i", "1/2+3i", "(1-2i)" style handled by callers.
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::string rational_str(const mpq_class& q);

}  // namespace crinv
