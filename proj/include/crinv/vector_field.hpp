#pragma once

#include "crinv/linalg.hpp"
#include "crinv/series.hpp"

#include <string>
#include <vector>

namespace crinv {

// Derivation sum_i c[i] d/dx_i with series coefficients.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(CtxPtr ctx, int order = kExact);
    VectorField(CtxPtr ctx, std::vector<Series> coefficients);
    static VectorField coordinate(CtxPtr ctx, std::size_t i);

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t size() const { return c_.size(); }
    const Series& operator[](std::size_t i) const { return c_[i]; }
    Series& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Series>& coefficients() const { return c_; }

    int order() const;
    bool is_zero() const;
    Series apply(const Series& f, int cap = kExact) const;
    Vec value_at_zero() const;

    VectorField conjugate() const;
    // Complex structure on complexified coordinates: J d/dz = i d/dz, J d/dzb = -i d/dzb.
    VectorField J() const;
    // Only holomorphic directions carry coefficients.
    bool is_type_10() const;
    VectorField truncated(int degree) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Series& f, const VectorField& X);
    friend VectorField operator*(const Gaussian& c, VectorField X);

    std::string str() const;

private:
    CtxPtr ctx_;
    std::vector<Series> c_;
};

VectorField bracket(const VectorField& X, const VectorField& Y, int cap = kExact);

// Linear combination sum_j d[j] * fields[j] with constant coefficients.
VectorField combine(const std::vector<VectorField>& fields, const Vec& d);

}  // namespace crinv
