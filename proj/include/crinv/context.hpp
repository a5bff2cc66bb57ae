#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace crinv {

using Exponent = std::vector<std::uint16_t>;

int total_degree(const Exponent& e);

// Graded order: lower total degree first; within a degree, larger exponent
// of the earlier variable first.
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class VariableContext;
using CtxPtr = std::shared_ptr<const VariableContext>;

class VariableContext {
public:
    enum class Kind { real, holomorphic, antiholomorphic };

    static CtxPtr make(std::vector<std::string> names, std::vector<int> pairing,
                       std::vector<Kind> kinds, std::vector<mpq_class> weights = {});
    static CtxPtr real(std::vector<std::string> names);
    // Complexified coordinates: for each holomorphic name x the context holds
    // x followed by its formal conjugate xb.
    static CtxPtr complexified(const std::vector<std::string>& holomorphic);
    // Holomorphic-only coordinates (no conjugates).
    static CtxPtr holomorphic(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int pair(std::size_t i) const { return pairing_[i]; }
    Kind kind(std::size_t i) const { return kinds_[i]; }
    bool is_holomorphic(std::size_t i) const { return kinds_[i] == Kind::holomorphic; }
    bool is_antiholomorphic(std::size_t i) const { return kinds_[i] == Kind::antiholomorphic; }
    const mpq_class& weight(std::size_t i) const { return weights_[i]; }
    int index(const std::string& name) const;  // -1 when absent
    bool has_conjugation() const { return conj_; }
    std::vector<int> holomorphic_indices() const;

    CtxPtr with_weights(std::vector<mpq_class> weights) const;

    bool same_as(const VariableContext& o) const;

private:
    std::vector<std::string> names_;
    std::vector<int> pairing_;
    std::vector<Kind> kinds_;
    std::vector<mpq_class> weights_;
    bool conj_ = true;
};

bool same_context(const CtxPtr& a, const CtxPtr& b);

}  // namespace crinv
