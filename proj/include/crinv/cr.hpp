#pragma once

#include "crinv/manifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crinv {

// (1,0) fields preserving I(O), computed to degree `order` in the parameters of O.
struct D10Module {
    std::vector<VectorField> lifts;  // fields realizing each value in D10(0)
    std::vector<Vec> values;         // basis of D10(0), holomorphic coordinates
    int order = 0;
};

D10Module d10_module_basis(const FormalSubmanifold& O, int order);

struct CRVerdict {
    bool cr = false;
    std::vector<Vec> h10;  // H10_0 O, holomorphic coordinates
    std::vector<Vec> d10;  // D10_O(0) at the order used
    int order = 0;
    std::string certificate;  // "CR up to order N" for positive verdicts
};

CRVerdict cr_check(const FormalSubmanifold& O, int order);

// Holomorphic subcontext (names of the holomorphic variables of ctx) and the
// slot of each holomorphic variable in ctx.
CtxPtr holomorphic_part(const CtxPtr& ctx);
std::vector<int> holomorphic_slots(const CtxPtr& ctx);

struct Complexification {
    bool ok = false;
    std::optional<FormalSubmanifold> V;
    std::vector<Series> elimination;  // basis of I(O) restricted to holomorphic polynomials up to degree N
    bool tangent_identity = false;    // T0 O + J T0 O = T0 V
    int order = 0;
    std::string failure;
};

Complexification intrinsic_complexification(const FormalSubmanifold& O, int order);
// f lies in the linear span of the computed elimination polynomials.
bool in_elimination_span(const Complexification& c, const Series& f);

struct DVSplitting {
    bool precondition = false;  // O inside V and T0O + J T0O = T0V
    bool holds = false;
    std::string note;
};

// V is a complex submanifold in holomorphic coordinates of O's context.
DVSplitting dv_splitting_check(const FormalSubmanifold& O, const FormalSubmanifold& V, int order);

// Complex span of v and J v over the complexified coordinates.
std::vector<Vec> j_closure(const std::vector<Vec>& vectors, const CtxPtr& ctx);

}  // namespace crinv
