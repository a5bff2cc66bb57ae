#pragma once

#include "crinv/linalg.hpp"
#include "crinv/series.hpp"
#include "crinv/vector_field.hpp"

#include <string>
#include <vector>

namespace crinv {

enum class Field { real, complex };
enum class Tri { no, yes, undecidable };

const char* to_string(Tri t);
Tri tri_and(Tri a, Tri b);

// Formal submanifold in graph form: x[pivots[j]] = phi[j](x[free_vars]).
class FormalSubmanifold {
public:
    FormalSubmanifold() = default;
    FormalSubmanifold(CtxPtr ctx, std::vector<int> pivots, std::vector<Series> phi, Field field);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const std::vector<int>& free_vars() const { return free_; }
    const std::vector<Series>& phi() const { return phi_; }
    Field field() const { return field_; }
    int dim() const { return static_cast<int>(free_.size()); }
    int codim() const { return static_cast<int>(pivots_.size()); }
    int order() const;
    bool exact() const { return is_exact_order(order()); }

    std::vector<Series> generators() const;
    Series generator(std::size_t j) const;

    // Ambient context, graph generators and dimensions as text.
    std::string str() const;

private:
    CtxPtr ctx_;
    std::vector<int> pivots_;
    std::vector<int> free_;
    std::vector<Series> phi_;
    Field field_ = Field::real;
};

bool same_submanifold(const FormalSubmanifold& a, const FormalSubmanifold& b, int order);

// Graph-normalizes raw generators with pivots chosen as the first admissible
// variables in context order.
FormalSubmanifold make_submanifold(const std::vector<Series>& raw, Field field, int cap);
FormalSubmanifold ambient_space(CtxPtr ctx, Field field);

struct Parametrization {
    CtxPtr params;
    std::vector<Series> components;  // one per ambient variable, in params
    int source_dim = 0;
    int split = 0;  // params [0, split) are t', the rest t''

    int order() const;
    // Total degree of the t'' part of e.
    int second_degree(const Exponent& e) const;
    Series pullback(const Series& f, int cap = kExact) const;
};

Parametrization parametrize(const FormalSubmanifold& O);
Parametrization joint_parametrize(const FormalSubmanifold& X, const FormalSubmanifold& Y, int cap);

struct Membership {
    Tri verdict = Tri::undecidable;
    int certified_order = -1;  // degrees inspected
    int valuation = -1;        // lowest normal degree seen, -1 when none
};

// f in I(O)^power, decided by the normal-degree valuation after substituting
// x_pivot = y + phi(x_free).
Membership ideal_membership(const Series& f, const FormalSubmanifold& O, int power);
// f in I(O)^power as a plain verdict.
Tri in_ideal(const Series& f, const FormalSubmanifold& O, int power);
// Lowest normal degree of f relative to O (kExact when f vanishes to full order).
int normal_valuation(const Series& f, const FormalSubmanifold& O, int* certified_order = nullptr);
// Y's generators all lie in I(X).
Tri contains(const FormalSubmanifold& Y, const FormalSubmanifold& X);

std::vector<VectorField> tangent_module_basis(const FormalSubmanifold& O);
Tri is_tangent(const VectorField& L, const FormalSubmanifold& O);
VectorField approximate_in_larger(const VectorField& L, const FormalSubmanifold& O, const FormalSubmanifold& V);
std::vector<Vec> tangent_space(const FormalSubmanifold& O);

// Real carrier in complexified coordinates of a complex submanifold given in
// holomorphic coordinates; target maps holomorphic variable i to its slot.
FormalSubmanifold real_carrier(const FormalSubmanifold& V, CtxPtr complexified, const std::vector<int>& target, int cap);

}  // namespace crinv
