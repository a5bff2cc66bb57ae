#pragma once

#include "crinv/linalg.hpp"
#include "crinv/series.hpp"
#include "crinv/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crinv {

// Real hypersurface S = {r = 0} in complexified coordinates, recentred at a
// base point.  Functions and field coefficients on S are kept in graph form:
// the pivot variable is replaced by phi, so they never depend on it.
class Hypersurface {
public:
    const CtxPtr& ctx() const { return ctx_; }
    const Series& r() const { return r_; }
    const Vec& base_point() const { return base_; }
    int pivot() const { return pivot_; }
    const Series& phi() const { return phi_; }
    const Series& multiplier() const { return h_; }
    int order() const { return order_; }
    // Holomorphic slots of the context; n_plus_1() of them.
    const std::vector<int>& holomorphic() const { return holo_; }
    std::size_t n_plus_1() const { return holo_.size(); }
    // Default H10 frame, one field per non-pivot holomorphic variable.
    const std::vector<VectorField>& h10() const { return h10_; }
    // theta = h * d r as coefficients on the holomorphic slots, restricted.
    Vec theta_at_base() const;

    Series restrict(const Series& f) const;
    VectorField restrict(const VectorField& X) const;
    Series conj(const Series& f) const;
    VectorField conj(const VectorField& X) const;
    // (f + conj f)/2, or Re(i f) when imaginary is set.
    Series re(const Series& f, bool imaginary = false) const;
    // theta(L) for a field tangent to S.
    Series theta(const VectorField& L) const;
    // L(r) restricted to S vanishes to the reliable order.
    bool is_tangent(const VectorField& L) const;

    // Same hypersurface with theta replaced by h * theta.
    Hypersurface with_multiplier(const Series& h) const;
    // Same base point and pivot with jets computed to a lower order.
    Hypersurface with_order(int order) const;

    friend Hypersurface make_hypersurface(const Series& r, const Vec& p, int order, int pivot);

private:
    CtxPtr ctx_;
    Series r_;
    Vec base_;
    int pivot_ = -1;
    Series phi_;
    Series h_;
    int order_ = 0;
    std::vector<int> holo_;
    std::vector<VectorField> h10_;
    std::vector<Series> dr_;  // restricted dr/dx for holomorphic slots, indexed by slot
};

// p lists values of the holomorphic variables in context order.  Throws
// "not a hypersurface point" when dr(p) = 0.  The pivot is the requested slot
// when dr/dx there is nonzero at p, else the first admissible holomorphic slot.
Hypersurface make_hypersurface(const Series& r, const Vec& p, int order, int pivot = -1);

// Exact when inputs are exact and the result fits under cap, else truncated.
Series capped_apply(const VectorField& L, const Series& f, int cap);
VectorField capped_bracket(const VectorField& X, const VectorField& Y, int cap);
Series capped_mul(const Series& a, const Series& b, int cap);

struct SubbundleFrame {
    std::vector<VectorField> frame;
    std::size_t rank() const { return frame.size(); }
};

SubbundleFrame h10_bundle(const Hypersurface& S);
// E = {xi in H10 : c(xi) = 0} for constant covectors on the holomorphic slots.
SubbundleFrame subbundle_from_covectors(const Hypersurface& S, const std::vector<Vec>& covectors);
// Kernel of forms given by their values on a frame; values[l][a] = omega_l(F_a).
SubbundleFrame kernel_frame(const Hypersurface& S, const SubbundleFrame& E,
                            std::vector<std::vector<Series>> values, std::vector<int>* pivots = nullptr);
// Frame values at the base point, holomorphic coordinates.
std::vector<Vec> frame_values(const Hypersurface& S, const SubbundleFrame& E);

// theta([L2, L1]); restricted to S.
Series levi_tensor(const Hypersurface& S, const VectorField& L2, const VectorField& L1);
// Levi matrix theta([X_a, conj X_b]) at the base point for the default frame.
Matrix levi_matrix(const Hypersurface& S);

// theta-dual form of a word.  word[0] is the innermost field L^1.
struct DualForm {
    std::vector<VectorField> word;
    bool imaginary = false;  // built from Re(i g) instead of Re(g)
    int order_t = 0;         // word length + 1
    Series f;                // dual function, empty for order 2
    std::vector<Series> value;  // omega(X_j) on the default H10 frame

    Vec at_base() const;
    bool vanishes_at_base() const;
};

DualForm theta_dual_form(const Hypersurface& S, const std::vector<VectorField>& word, bool imaginary = false);
// omega(F) as a function on S.
Series form_on(const Hypersurface& S, const DualForm& w, const VectorField& F);

// Kernel of the forms inside H10; throws when they are dependent at the base point.
SubbundleFrame special_subbundle(const Hypersurface& S, const std::vector<DualForm>& forms);

// Rational points of S parametrized by the non-pivot coordinates and the
// imaginary part of the pivot; requires r affine in the pivot's real part.
std::optional<Vec> point_on(const Series& r, const Vec& partial, int pivot_index);

struct PsdReport {
    bool holds = true;
    std::vector<std::string> violations;
};

// Exact positive semidefiniteness of the Levi matrix at each sample point.
PsdReport pseudoconvexity_sample_check(const Series& r, const std::vector<Vec>& points, int order);
// All principal minors nonnegative (Hermitian input).
bool is_psd(const Matrix& A);

}  // namespace crinv
