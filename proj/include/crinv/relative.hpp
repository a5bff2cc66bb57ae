#pragma once

#include "crinv/manifold.hpp"
#include "crinv/types.hpp"

#include <string>
#include <vector>

namespace crinv {

// A real submanifold O inside a real carrier V of a complex submanifold,
// together with the defining series R of a hypersurface through 0.
struct RelativePair {
    FormalSubmanifold O;
    FormalSubmanifold V;
    Parametrization joint;  // A(t', t''), A(t', 0) parametrizes O
    Series R;
    int order = 0;
    bool pseudoconvex = false;  // certified by construction, never inferred
};

RelativePair make_relative_pair(const Series& R, const FormalSubmanifold& O, const FormalSubmanifold& V, int order,
                                bool pseudoconvex = false);

struct RelativeJet {
    int k = 0;
    int split = 0;          // parameters [0, split) are t'
    Series representative;  // in (t', t''), t''-degree <= k

    friend bool operator==(const RelativeJet& a, const RelativeJet& b) {
        return a.k == b.k && a.split == b.split && a.representative == b.representative;
    }
};

RelativeJet relative_jet(const Series& F, const RelativePair& P, int k);
// Product of jets truncated at t''-degree k.
RelativeJet jet_product(const RelativeJet& a, const RelativeJet& b);

// Lowest t''-degree of F o A (kExact when nothing survives up to the order).
int relative_valuation(const Series& F, const RelativePair& P, int* certified_order = nullptr);
// F in I(O)^power + I(V).
Membership relative_membership(const Series& F, const RelativePair& P, int power);

struct RelativeContactOrder {
    Bounded k;
    bool precondition = false;  // R in I(O)
    std::string violation;
};

RelativeContactOrder relative_contact_order(const RelativePair& P);

struct MapApproximation {
    std::vector<Series> components;
    int pivot = -1;
    Series quotient;  // pivot component of the difference over R o A
    bool on_zero_set = false;
    bool congruent = false;
    int order = 0;
};

// Moves a formal map onto {R = 0} by replacing the pivot component with the
// graph of R over the remaining ones.
MapApproximation approximate_map(const Series& R, const std::vector<Series>& A, int order, int pivot = -1);

struct FieldApproximation {
    VectorField field;
    int pivot = -1;
    Series quotient;  // pivot coefficient of the difference over L R
    bool annihilates = false;
    bool congruent = false;
    int order = 0;
};

FieldApproximation approximate_field(const Series& R, const VectorField& L, int order);

struct SupertangentVerdict {
    Tri verdict = Tri::undecidable;
    int valuation = -1;  // lowest t''-degree of (L R) o A, -1 when none
};

SupertangentVerdict supertangent_check(const RelativePair& P, const VectorField& L, int k);
Tri complex_supertangent_check(const RelativePair& P, const VectorField& L, int k);

struct JetTesting {
    bool hypothesis = false;  // derivatives of length k' have vanishing (k''-k')-jets
    bool conclusion = false;  // F in I(O)^(k''+1) + I(V)
    long words = 0;
    bool held() const { return !hypothesis || conclusion; }
};

JetTesting jet_testing(const RelativePair& P, const Series& F, int k1, int k2);

// ∂∂̄R(X, Y) as an alternating form on complexified fields.
Series complex_hessian(const Series& R, const VectorField& X, const VectorField& Y, int order);

struct PairAssumptions {
    bool generic = false;          // T0 O + J T0 O = T0 V
    bool contained = false;        // R in I(O)
    bool complex_tangent = false;  // J D_O annihilates R modulo I(O)
    bool checkable() const { return generic && contained && complex_tangent; }
};

PairAssumptions pair_assumptions(const RelativePair& P);

struct ParityReport {
    bool skipped = false;
    std::string skip_reason;
    Bounded k;
    int supertangent_fields = 0;
    int hessians_checked = 0;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

// Lower bound and parity of k, and hessian membership along supertangent
// (1,0) fields tangent to V.
ParityReport hessian_parity_checks(const RelativePair& P, const std::vector<VectorField>& fields);

struct LieClosure {
    bool skipped = false;
    std::string skip_reason;
    Tri verdict = Tri::undecidable;
};

LieClosure lie_closure_check(const RelativePair& P, const VectorField& L2, const VectorField& L1);

// Polynomial (1,0) fields of degree <= degree tangent to O (and to V when with_v).
std::vector<VectorField> d10_space(const RelativePair& P, int degree, bool with_v = true);
// Polynomial fields of degree <= degree tangent to O and V with L and JL supertangent.
std::vector<VectorField> complex_supertangent_space(const RelativePair& P, int degree);

struct ClosureReport {
    Tri verdict = Tri::yes;
    long pairs = 0;
    std::string failure;
};

ClosureReport bracket_closure(const RelativePair& P, const std::vector<VectorField>& basis);

// Lie(D10_O + conj D10_O)(0) = C T0 O, with D10_O truncated at degree.
bool finite_commutator_type(const RelativePair& P, int degree);

struct PositivityCheck {
    bool hypothesis = false;  // f in (y)^k
    int b = -1;               // lowest x-order of the pure y^k part
    Series leading;           // bi-homogeneous part of bidegree (b, k)
    bool conclusion = false;  // f in (y)^(k+1)
};

// f in (y)^k with k odd; y_vars lists the y coordinates.
PositivityCheck positivity_parity(const Series& f, const std::vector<int>& y_vars, int k);

}  // namespace crinv
