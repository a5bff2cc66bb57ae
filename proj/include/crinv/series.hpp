#pragma once

#include "crinv/context.hpp"
#include "crinv/gaussian.hpp"

#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crinv {

// Sentinel reliable order of an exact polynomial.
inline constexpr int kExact = INT_MAX / 4;

inline bool is_exact_order(int n) { return n >= kExact; }
inline int order_add(int a, int b) { return (is_exact_order(a) || is_exact_order(b)) ? kExact : a + b; }

class Series {
public:
    using Terms = std::map<Exponent, Gaussian, GradedLex>;

    Series() = default;
    explicit Series(CtxPtr ctx, int order = kExact) : ctx_(std::move(ctx)), order_(order) {}

    static Series zero(CtxPtr ctx, int order = kExact) { return Series(std::move(ctx), order); }
    static Series constant(CtxPtr ctx, const Gaussian& c, int order = kExact);
    static Series var(CtxPtr ctx, std::size_t i, int order = kExact);
    static Series monomial(CtxPtr ctx, Exponent e, const Gaussian& c, int order = kExact);

    const CtxPtr& ctx() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    int order() const { return order_; }
    bool exact() const { return is_exact_order(order_); }
    std::size_t nvars() const { return ctx_->size(); }

    // Adds c * x^e, dropping the term if its degree exceeds the order.
    void add_term(const Exponent& e, const Gaussian& c);
    void set_order(int n);

    bool is_zero() const { return terms_.empty(); }
    Gaussian coeff(const Exponent& e) const;
    Gaussian constant_term() const;
    // Lowest stored degree; order()+1 (or kExact) when nothing is stored.
    int valuation() const;
    int degree() const;  // highest stored degree, -1 for zero
    bool depends_on(std::size_t i) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Gaussian& c);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const Gaussian& c) { return a *= c; }
    friend Series operator*(const Gaussian& c, Series a) { return a *= c; }

    // Multiplication discarding every term above degree cap.
    static Series mul_capped(const Series& a, const Series& b, int cap);

    Series truncated(int degree) const;
    Series derivative(std::size_t i) const;
    Series conjugate() const;
    bool is_real() const;

    // 1/a for a unit, correct up to min(order, cap).
    Series inverse(int cap) const;

    // Evaluation at a point of an exact series.
    Gaussian evaluate(const std::vector<Gaussian>& point) const;

    // Same context, same stored terms up to degree n.
    bool agrees_with(const Series& o, int n) const;
    friend bool operator==(const Series& a, const Series& b);

    std::string str() const;

private:
    CtxPtr ctx_;
    Terms terms_;
    int order_ = kExact;
};

Series pow(const Series& s, int k, int cap = kExact);

// Substitutes subst[i] for variable i of f.  Every substituted series lives in a
// common target context.  Constant terms are only allowed for exact f.
Series compose(const Series& f, const std::vector<Series>& subst, int cap = kExact);

// Solves F = 0 for the pivot variables as series in the remaining variables
// (formal implicit function theorem, Newton iteration).
std::vector<Series> graph_solve(const std::vector<Series>& F, const std::vector<int>& pivots, int cap);

// The part of f of weight exactly k.  Throws when f has terms of lower weight.
Series lowest_weighted_component(const Series& f, const std::vector<mpq_class>& weights, const mpq_class& k);
mpq_class weight_of(const Exponent& e, const std::vector<mpq_class>& weights);

// f(x + p) in coordinates centred at p.  Exact series only.
Series recentre(const Series& f, const std::vector<Gaussian>& p);

// Re-expresses f in another context with the same variable count.
Series rebind(const Series& f, CtxPtr ctx);

// Maps variable i of f's context to variable map[i] of ctx.
Series embed(const Series& f, CtxPtr ctx, const std::vector<int>& map);

std::string monomial_str(const VariableContext& ctx, const Exponent& e);

// All exponents in nvars variables of total degree in [lo, hi], graded order.
std::vector<Exponent> monomials_between(std::size_t nvars, int lo, int hi);

}  // namespace crinv
