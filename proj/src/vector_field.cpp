#include "crinv/vector_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace crinv {

VectorField::VectorField(CtxPtr ctx, int order) : ctx_(ctx), c_(ctx->size(), Series::zero(ctx, order)) {}

VectorField::VectorField(CtxPtr ctx, std::vector<Series> coefficients) : ctx_(std::move(ctx)), c_(std::move(coefficients)) {
    if (c_.size() != ctx_->size()) throw std::invalid_argument("vector field: coefficient count mismatch");
    for (const auto& s : c_)
        if (!same_context(s.ctx(), ctx_)) throw std::invalid_argument("vector field: coefficient context mismatch");
}

VectorField VectorField::coordinate(CtxPtr ctx, std::size_t i) {
    VectorField X(ctx);
    X.c_.at(i) = Series::constant(ctx, Gaussian(1));
    return X;
}

int VectorField::order() const {
    int n = kExact;
    for (const auto& s : c_) n = std::min(n, s.order());
    return n;
}

bool VectorField::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_zero(); });
}

Series VectorField::apply(const Series& f, int cap) const {
    if (!same_context(f.ctx(), ctx_)) throw std::invalid_argument("vector field: context mismatch");
    Series out = Series::zero(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero() && c_[i].exact()) continue;
        out += Series::mul_capped(c_[i], f.derivative(i), cap);
    }
    if (cap < kExact) out.set_order(cap);
    return out;
}

Vec VectorField::value_at_zero() const {
    Vec v;
    v.reserve(c_.size());
    for (const auto& s : c_) v.push_back(s.constant_term());
    return v;
}

VectorField VectorField::conjugate() const {
    VectorField out(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[ctx_->pair(i)] = c_[i].conjugate();
    return out;
}

VectorField VectorField::J() const {
    VectorField out(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (ctx_->is_holomorphic(i)) out.c_[i] *= Gaussian::i();
        else if (ctx_->is_antiholomorphic(i)) out.c_[i] *= -Gaussian::i();
        else throw std::logic_error("J: real coordinates carry no complex structure");
    }
    return out;
}

bool VectorField::is_type_10() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!ctx_->is_holomorphic(i) && !c_[i].is_zero()) return false;
    return true;
}

VectorField VectorField::truncated(int degree) const {
    VectorField out(*this);
    for (auto& s : out.c_) s.set_order(degree);
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_.at(i);
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_.at(i);
    return *this;
}

VectorField operator*(const Series& f, const VectorField& X) {
    VectorField out(X);
    for (auto& s : out.c_) s = f * s;
    return out;
}

VectorField operator*(const Gaussian& c, VectorField X) {
    for (auto& s : X.c_) s *= c;
    return X;
}

std::string VectorField::str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[i].str() + ")*d/d" + ctx_->name(i);
    }
    return out.empty() ? "0" : out;
}

VectorField bracket(const VectorField& X, const VectorField& Y, int cap) {
    if (!same_context(X.ctx(), Y.ctx())) throw std::invalid_argument("bracket: context mismatch");
    VectorField out(X.ctx());
    for (std::size_t j = 0; j < X.size(); ++j) out[j] = X.apply(Y[j], cap) - Y.apply(X[j], cap);
    return out;
}

VectorField combine(const std::vector<VectorField>& fields, const Vec& d) {
    if (fields.empty()) throw std::invalid_argument("combine: no fields");
    VectorField out(fields[0].ctx());
    for (std::size_t j = 0; j < fields.size(); ++j) {
        if (d.at(j).is_zero()) continue;
        out += d[j] * fields[j];
    }
    return out;
}

}  // namespace crinv
