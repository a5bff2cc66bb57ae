#include "crinv/context.hpp"

#include <stdexcept>

namespace crinv {

int total_degree(const Exponent& e) {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

CtxPtr VariableContext::make(std::vector<std::string> names, std::vector<int> pairing,
                             std::vector<Kind> kinds, std::vector<mpq_class> weights) {
    const std::size_t n = names.size();
    if (pairing.size() != n || kinds.size() != n) throw std::invalid_argument("context: size mismatch");
    if (weights.empty()) weights.assign(n, mpq_class(1));
    if (weights.size() != n) throw std::invalid_argument("context: weight count mismatch");
    auto ctx = std::make_shared<VariableContext>();
    for (std::size_t i = 0; i < n; ++i) {
        int p = pairing[i];
        if (p < 0 || static_cast<std::size_t>(p) >= n || pairing[p] != static_cast<int>(i))
            throw std::invalid_argument("context: pairing is not an involution");
        if (sgn(weights[i]) <= 0) throw std::invalid_argument("context: weights must be positive");
        if ((p == static_cast<int>(i)) != (kinds[i] == Kind::real))
            throw std::invalid_argument("context: only real variables are self-paired");
    }
    ctx->names_ = std::move(names);
    ctx->pairing_ = std::move(pairing);
    ctx->kinds_ = std::move(kinds);
    ctx->weights_ = std::move(weights);
    return ctx;
}

CtxPtr VariableContext::real(std::vector<std::string> names) {
    std::vector<int> pairing(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) pairing[i] = static_cast<int>(i);
    return make(std::move(names), std::move(pairing), std::vector<Kind>(pairing.size(), Kind::real));
}

CtxPtr VariableContext::complexified(const std::vector<std::string>& holomorphic) {
    std::vector<std::string> names;
    std::vector<int> pairing;
    std::vector<Kind> kinds;
    for (std::size_t j = 0; j < holomorphic.size(); ++j) {
        int a = static_cast<int>(2 * j);
        names.push_back(holomorphic[j]);
        names.push_back(holomorphic[j] + "b");
        pairing.push_back(a + 1);
        pairing.push_back(a);
        kinds.push_back(Kind::holomorphic);
        kinds.push_back(Kind::antiholomorphic);
    }
    return make(std::move(names), std::move(pairing), std::move(kinds));
}

CtxPtr VariableContext::holomorphic(std::vector<std::string> names) {
    auto ctx = real(std::move(names));
    auto out = std::make_shared<VariableContext>(*ctx);
    out->kinds_.assign(out->names_.size(), Kind::holomorphic);
    out->conj_ = false;
    return out;
}

int VariableContext::index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> VariableContext::holomorphic_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (kinds_[i] == Kind::holomorphic) out.push_back(static_cast<int>(i));
    return out;
}

CtxPtr VariableContext::with_weights(std::vector<mpq_class> weights) const {
    auto out = std::make_shared<VariableContext>(*this);
    if (weights.size() != size()) throw std::invalid_argument("context: weight count mismatch");
    for (auto& w : weights)
        if (sgn(w) <= 0) throw std::invalid_argument("context: weights must be positive");
    out->weights_ = std::move(weights);
    return out;
}

bool VariableContext::same_as(const VariableContext& o) const {
    return names_ == o.names_ && pairing_ == o.pairing_ && kinds_ == o.kinds_ && conj_ == o.conj_;
}

bool same_context(const CtxPtr& a, const CtxPtr& b) {
    return a == b || (a && b && a->same_as(*b));
}

}  // namespace crinv
