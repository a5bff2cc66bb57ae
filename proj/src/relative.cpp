#include "crinv/relative.hpp"

#include "crinv/cr.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crinv {

namespace {

Series pull(const RelativePair& P, const Series& F) {
    if (!same_context(F.ctx(), P.O.ctx())) throw std::invalid_argument("relative: context mismatch");
    if (F.is_zero() && F.exact()) return Series::zero(P.joint.params);
    return P.joint.pullback(F, P.order);
}

int second_valuation(const Parametrization& A, const Series& g) {
    int v = kExact;
    for (const auto& [e, c] : g.terms()) v = std::min(v, A.second_degree(e));
    return v;
}

Membership membership_from(int v, int certified, int power) {
    Membership m;
    m.certified_order = certified;
    m.valuation = v >= kExact ? -1 : v;
    if (v < power) m.verdict = Tri::no;
    else if (is_exact_order(certified) || certified >= power) m.verdict = Tri::yes;
    else m.verdict = Tri::undecidable;
    return m;
}

// Linear conditions on polynomial fields: the t''-part of (X g) o A below
// `below` vanishes, X replaced by JX when use_j.
struct Condition {
    Series g;
    int below;
    bool use_j = false;
};

Gaussian j_factor(const CtxPtr& ctx, std::size_t i) {
    if (ctx->is_holomorphic(i)) return Gaussian::i();
    if (ctx->is_antiholomorphic(i)) return -Gaussian::i();
    throw std::logic_error("J: real coordinates carry no complex structure");
}

std::vector<VectorField> solve_fields(const RelativePair& P, int degree, const std::vector<int>& dirs,
                                      const std::vector<Condition>& conds) {
    const CtxPtr& ctx = P.O.ctx();
    const std::size_t m = ctx->size();
    auto monos = monomials_between(m, 0, degree);
    const std::size_t U = dirs.size() * monos.size();

    std::vector<Series> pulled_mono;
    for (const auto& e : monos) pulled_mono.push_back(pull(P, Series::monomial(ctx, e, Gaussian(1))));

    std::map<std::pair<std::size_t, Exponent>, SparseVec> rows;
    for (std::size_t c = 0; c < conds.size(); ++c)
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            Series dg = pull(P, conds[c].g.derivative(dirs[d]));
            if (dg.is_zero()) continue;
            Gaussian s = conds[c].use_j ? j_factor(ctx, dirs[d]) : Gaussian(1);
            for (std::size_t k = 0; k < monos.size(); ++k) {
                Series t = capped_mul(pulled_mono[k], dg, P.order);
                for (const auto& [e, a] : t.terms())
                    if (P.joint.second_degree(e) < conds[c].below) rows[{c, e}][d * monos.size() + k] += s * a;
            }
        }
    EchelonBasis B;
    for (auto& [key, row] : rows) {
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
        if (!row.empty()) B.insert(std::move(row));
    }
    Matrix M(std::max<std::size_t>(B.size(), 1), U);
    std::size_t r = 0;
    for (const auto& [p, row] : B.rows()) {
        for (const auto& [j, a] : row) M(r, j) = a;
        ++r;
    }
    std::vector<VectorField> out;
    for (const auto& x : M.kernel()) {
        VectorField X(ctx);
        for (std::size_t d = 0; d < dirs.size(); ++d)
            for (std::size_t k = 0; k < monos.size(); ++k) {
                const Gaussian& a = x[d * monos.size() + k];
                if (!a.is_zero()) X[dirs[d]].add_term(monos[k], a);
            }
        out.push_back(X);
    }
    return out;
}

std::vector<Condition> tangency(const RelativePair& P, bool with_v) {
    std::vector<Condition> c;
    for (const auto& g : P.O.generators()) c.push_back({g, 1});
    if (with_v)
        for (const auto& g : P.V.generators()) c.push_back({g, kExact});
    return c;
}

SparseVec flatten(const VectorField& X, std::map<std::pair<std::size_t, Exponent>, std::size_t>& ids) {
    SparseVec v;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (const auto& [e, c] : X[i].terms()) {
            auto [it, fresh] = ids.try_emplace({i, e}, ids.size());
            (void)fresh;
            v[it->second] = c;
        }
    return v;
}

SparseVec dense_to_sparse(const Vec& x) {
    SparseVec v;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) v[i] = x[i];
    return v;
}

int require_finite_k(const RelativePair& P, std::string* reason) {
    auto k = relative_contact_order(P);
    if (!k.precondition) {
        *reason = k.violation;
        return -1;
    }
    if (!k.k.is_finite()) {
        *reason = "V is tangent to S up to order " + std::to_string(k.k.value);
        return -1;
    }
    return k.k.value;
}

}  // namespace

RelativePair make_relative_pair(const Series& R, const FormalSubmanifold& O, const FormalSubmanifold& V, int order,
                                bool pseudoconvex) {
    if (!same_context(R.ctx(), O.ctx()) || !same_context(O.ctx(), V.ctx()))
        throw std::invalid_argument("relative pair: context mismatch");
    if (!R.is_real()) throw std::invalid_argument("relative pair: R is not real");
    RelativePair P;
    P.O = O;
    P.V = V;
    P.R = R;
    P.order = order;
    P.pseudoconvex = pseudoconvex;
    P.joint = joint_parametrize(O, V, order);
    return P;
}

RelativeJet relative_jet(const Series& F, const RelativePair& P, int k) {
    Series g = pull(P, F);
    Series rep(P.joint.params, g.order());
    for (const auto& [e, c] : g.terms())
        if (P.joint.second_degree(e) <= k) rep.add_term(e, c);
    return RelativeJet{k, P.joint.split, rep};
}

RelativeJet jet_product(const RelativeJet& a, const RelativeJet& b) {
    if (a.k != b.k || a.split != b.split) throw std::invalid_argument("jet_product: different jet orders");
    Series p = Series::mul_capped(a.representative, b.representative,
                                  std::min(a.representative.order(), b.representative.order()));
    Series rep(p.ctx(), p.order());
    for (const auto& [e, c] : p.terms()) {
        int d = 0;
        for (std::size_t i = static_cast<std::size_t>(a.split); i < e.size(); ++i) d += e[i];
        if (d <= a.k) rep.add_term(e, c);
    }
    return RelativeJet{a.k, a.split, rep};
}

int relative_valuation(const Series& F, const RelativePair& P, int* certified_order) {
    Series g = pull(P, F);
    if (certified_order) *certified_order = g.order();
    return second_valuation(P.joint, g);
}

Membership relative_membership(const Series& F, const RelativePair& P, int power) {
    if (power < 0) throw std::invalid_argument("relative_membership: negative power");
    int certified = 0;
    int v = relative_valuation(F, P, &certified);
    return membership_from(v, certified, power);
}

RelativeContactOrder relative_contact_order(const RelativePair& P) {
    RelativeContactOrder out;
    int certified = 0;
    int v = relative_valuation(P.R, P, &certified);
    if (v < 1) {
        out.violation = "precondition violated: R is not in I(O)";
        out.k = Bounded::finite(0);
        return out;
    }
    out.precondition = true;
    int bound = std::min(P.order, certified);
    out.k = v >= kExact || v > bound ? Bounded::lower(bound) : Bounded::finite(v);
    return out;
}

MapApproximation approximate_map(const Series& R, const std::vector<Series>& A, int order, int pivot) {
    const CtxPtr& ctx = R.ctx();
    if (A.size() != ctx->size()) throw std::invalid_argument("approximate_map: map dimension mismatch");
    auto admissible = [&](int i) { return i >= 0 && i < static_cast<int>(ctx->size()) && !R.derivative(i).constant_term().is_zero(); };
    if (!admissible(pivot)) {
        pivot = -1;
        for (std::size_t i = 0; i < ctx->size() && pivot < 0; ++i)
            if (admissible(static_cast<int>(i))) pivot = static_cast<int>(i);
    }
    if (pivot < 0) throw std::domain_error("approximate_map: dR(0) = 0");
    const std::size_t m = static_cast<std::size_t>(pivot);

    MapApproximation out;
    out.pivot = pivot;
    out.order = order;
    Series phi = graph_solve({R}, {pivot}, order)[0];
    out.components = A;
    out.components[m] = compose(phi, A, order);

    // R(x', y + phi(x')) = y u(x', y)
    std::vector<Series> shift;
    for (std::size_t i = 0; i < ctx->size(); ++i) shift.push_back(Series::var(ctx, i));
    shift[m] += phi;
    Series Rt = compose(R, shift, order);
    Series u(ctx, Rt.order() < kExact ? Rt.order() - 1 : kExact);
    for (const auto& [e, c] : Rt.terms()) {
        if (e[m] == 0) throw std::logic_error("approximate_map: graph does not solve R");
        Exponent f = e;
        --f[m];
        u.add_term(f, c);
    }
    std::vector<Series> at = A;
    at[m] = A[m] - out.components[m];
    Series uA = compose(u, at, order);
    out.quotient = -uA.inverse(order);

    Series RA = compose(R, A, order);
    Series diff = out.components[m] - A[m];
    out.congruent = (diff - capped_mul(out.quotient, RA, order)).truncated(order).is_zero();
    out.on_zero_set = compose(R, out.components, order).truncated(order).is_zero();
    return out;
}

FieldApproximation approximate_field(const Series& R, const VectorField& L, int order) {
    const CtxPtr& ctx = R.ctx();
    if (!L.is_type_10()) throw std::invalid_argument("approximate_field: L is not a (1,0) field");
    FieldApproximation out;
    out.order = order;
    for (int i : ctx->holomorphic_indices())
        if (!R.derivative(i).constant_term().is_zero()) {
            out.pivot = i;
            break;
        }
    if (out.pivot < 0) throw std::domain_error("approximate_field: all holomorphic partials vanish at 0");
    Series Rn = R.derivative(out.pivot);
    out.quotient = -Rn.inverse(order);
    Series LR = capped_apply(L, R, order);
    out.field = L;
    out.field[out.pivot] += capped_mul(out.quotient, LR, order);
    out.annihilates = capped_apply(out.field, R, order).truncated(order - 1).is_zero();
    Series back = capped_mul(out.field[out.pivot] - L[out.pivot], Rn, order);
    out.congruent = (back + LR).truncated(order).is_zero();
    return out;
}

SupertangentVerdict supertangent_check(const RelativePair& P, const VectorField& L, int k) {
    if (is_tangent(L, P.V) == Tri::no) throw std::domain_error("supertangent_check: L is not tangent to V");
    auto m = relative_membership(capped_apply(L, P.R, P.order), P, k);
    return SupertangentVerdict{m.verdict, m.valuation};
}

Tri complex_supertangent_check(const RelativePair& P, const VectorField& L, int k) {
    return tri_and(supertangent_check(P, L, k).verdict, supertangent_check(P, L.J(), k).verdict);
}

JetTesting jet_testing(const RelativePair& P, const Series& F, int k1, int k2) {
    if (k1 <= 0 || k1 > k2) throw std::invalid_argument("jet_testing: need 0 < k' <= k''");
    if (relative_membership(F, P, k2).verdict == Tri::no)
        throw std::domain_error("jet_testing: F is not in I(O)^k'' + I(V)");
    auto basis = tangent_module_basis(P.V);
    JetTesting out;
    out.hypothesis = true;
    std::vector<Series> level{F};
    for (int s = 0; s < k1; ++s) {
        std::vector<Series> next;
        for (const auto& g : level)
            for (const auto& L : basis) next.push_back(capped_apply(L, g, P.order));
        level = std::move(next);
    }
    for (const auto& g : level) {
        ++out.words;
        if (relative_membership(g, P, k2 - k1 + 1).verdict == Tri::no) out.hypothesis = false;
    }
    out.conclusion = relative_membership(F, P, k2 + 1).verdict == Tri::yes;
    return out;
}

Series complex_hessian(const Series& R, const VectorField& X, const VectorField& Y, int order) {
    const CtxPtr& ctx = R.ctx();
    Series out = Series::zero(ctx);
    for (int i : ctx->holomorphic_indices())
        for (int j : ctx->holomorphic_indices()) {
            int jb = ctx->pair(j);
            Series h = R.derivative(i).derivative(jb);
            if (h.is_zero()) continue;
            Series a = capped_mul(X[i], Y[jb], order) - capped_mul(Y[i], X[jb], order);
            out += capped_mul(h, a, order);
        }
    return out;
}

PairAssumptions pair_assumptions(const RelativePair& P) {
    PairAssumptions a;
    const CtxPtr& ctx = P.O.ctx();
    a.generic = same_span(j_closure(tangent_space(P.O), ctx), tangent_space(P.V), ctx->size());
    a.contained = in_ideal(P.R, P.O, 1) == Tri::yes;
    a.complex_tangent = true;
    for (const auto& L : tangent_module_basis(P.O))
        if (in_ideal(capped_apply(L.J(), P.R, P.order), P.O, 1) != Tri::yes) a.complex_tangent = false;
    return a;
}

ParityReport hessian_parity_checks(const RelativePair& P, const std::vector<VectorField>& fields) {
    ParityReport rep;
    auto A = pair_assumptions(P);
    if (!P.pseudoconvex) {
        rep.skipped = true;
        rep.skip_reason = "pseudoconvexity not certified";
        return rep;
    }
    if (!A.checkable()) {
        rep.skipped = true;
        rep.skip_reason = !A.generic ? "O is not generic in V" : !A.contained ? "R is not in I(O)" : "O is not complex-tangential";
        return rep;
    }
    auto kc = relative_contact_order(P);
    rep.k = kc.k;
    if (!kc.k.is_finite()) {
        rep.notes.push_back("V is tangent to S up to order " + std::to_string(kc.k.value));
        return rep;
    }
    const int k = kc.k.value;
    if (k < 2) rep.violations.push_back("relative contact order " + std::to_string(k) + " below 2");
    if (k % 2) rep.violations.push_back("odd relative contact order " + std::to_string(k));
    for (std::size_t a = 0; a < fields.size(); ++a) {
        const auto& L = fields[a];
        if (!L.is_type_10() || is_tangent(L, P.V) != Tri::yes) {
            rep.notes.push_back("field " + std::to_string(a) + " is not a (1,0) field tangent to V");
            continue;
        }
        if (supertangent_check(P, L, k).verdict != Tri::yes) continue;
        ++rep.supertangent_fields;
        ++rep.hessians_checked;
        Series h = complex_hessian(P.R, L, L.conjugate(), P.order);
        if (relative_membership(h, P, k).verdict == Tri::no)
            rep.violations.push_back("hessian along supertangent field " + std::to_string(a) + " not in I(O)^k + I(V)");
    }
    return rep;
}

LieClosure lie_closure_check(const RelativePair& P, const VectorField& L2, const VectorField& L1) {
    LieClosure out;
    auto skip = [&](std::string why) {
        out.skipped = true;
        out.skip_reason = std::move(why);
        return out;
    };
    if (!P.pseudoconvex) return skip("pseudoconvexity not certified");
    std::string reason;
    int k = require_finite_k(P, &reason);
    if (k < 0) return skip(reason);
    if (k % 2) return skip("odd relative contact order");
    for (const auto* L : {&L2, &L1}) {
        if (is_tangent(*L, P.O) != Tri::yes || is_tangent(*L, P.V) != Tri::yes)
            return skip("input field is not tangent to O and V");
        if (complex_supertangent_check(P, *L, k) != Tri::yes) return skip("input field is not complex-supertangent");
    }
    out.verdict = complex_supertangent_check(P, bracket(L2, L1, P.order), k);
    return out;
}

std::vector<VectorField> d10_space(const RelativePair& P, int degree, bool with_v) {
    return solve_fields(P, degree, P.O.ctx()->holomorphic_indices(), tangency(P, with_v));
}

std::vector<VectorField> complex_supertangent_space(const RelativePair& P, int degree) {
    std::string reason;
    int k = require_finite_k(P, &reason);
    if (k < 0) throw std::domain_error("complex_supertangent_space: " + reason);
    auto conds = tangency(P, true);
    conds.push_back({P.R, k, false});
    conds.push_back({P.R, k, true});
    std::vector<int> dirs;
    for (std::size_t i = 0; i < P.O.ctx()->size(); ++i) dirs.push_back(static_cast<int>(i));
    return solve_fields(P, degree, dirs, conds);
}

ClosureReport bracket_closure(const RelativePair& P, const std::vector<VectorField>& basis) {
    ClosureReport rep;
    std::string reason;
    int k = require_finite_k(P, &reason);
    if (k < 0) {
        rep.verdict = Tri::undecidable;
        rep.failure = reason;
        return rep;
    }
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
            ++rep.pairs;
            VectorField C = bracket(basis[a], basis[b], P.order);
            Tri t = tri_and(is_tangent(C, P.O), is_tangent(C, P.V));
            t = tri_and(t, complex_supertangent_check(P, C, k));
            if (t != Tri::yes) {
                rep.verdict = t == Tri::no ? Tri::no : tri_and(rep.verdict, t);
                if (t == Tri::no) {
                    rep.failure = "bracket of basis fields " + std::to_string(a) + ", " + std::to_string(b);
                    return rep;
                }
            }
        }
    return rep;
}

bool finite_commutator_type(const RelativePair& P, int degree) {
    const CtxPtr& ctx = P.O.ctx();
    const std::size_t target = static_cast<std::size_t>(P.O.dim());
    std::vector<VectorField> gens = d10_space(P, degree, false);
    const std::size_t n10 = gens.size();
    for (std::size_t a = 0; a < n10; ++a) gens.push_back(gens[a].conjugate());

    EchelonBasis values;
    auto note_value = [&](const VectorField& X) { values.insert(dense_to_sparse(X.value_at_zero())); };
    std::map<std::pair<std::size_t, Exponent>, std::size_t> ids;
    EchelonBasis seen;
    std::vector<VectorField> level;
    for (const auto& g : gens)
        if (seen.insert(flatten(g, ids))) {
            level.push_back(g);
            note_value(g);
        }
    const std::size_t max_fields = 4000;
    for (int depth = 2; depth <= degree + 1 && values.size() < target && !level.empty(); ++depth) {
        std::vector<VectorField> next;
        for (const auto& g : gens)
            for (const auto& X : level) {
                VectorField C = bracket(g, X);
                if (C.is_zero() || !seen.insert(flatten(C, ids))) continue;
                next.push_back(C);
                note_value(C);
                if (seen.size() > max_fields) break;
            }
        level = std::move(next);
    }
    (void)ctx;
    return values.size() == target;
}

PositivityCheck positivity_parity(const Series& f, const std::vector<int>& y_vars, int k) {
    const std::size_t m = f.nvars();
    std::vector<bool> is_y(m, false);
    for (int i : y_vars) is_y.at(static_cast<std::size_t>(i)) = true;
    auto ydeg = [&](const Exponent& e) {
        int d = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (is_y[i]) d += e[i];
        return d;
    };
    PositivityCheck out;
    out.hypothesis = true;
    out.leading = Series::zero(f.ctx());
    for (const auto& [e, c] : f.terms()) {
        int d = ydeg(e);
        if (d < k) out.hypothesis = false;
        if (d == k) {
            int xd = total_degree(e) - d;
            out.b = out.b < 0 ? xd : std::min(out.b, xd);
        }
    }
    if (!out.hypothesis) return out;
    out.conclusion = out.b < 0;
    if (out.b >= 0) {
        std::vector<mpq_class> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = is_y[i] ? mpq_class(out.b + 1) : mpq_class(1);
        out.leading = lowest_weighted_component(f, w, mpq_class(out.b + k * (out.b + 1)));
    }
    return out;
}

}  // namespace crinv
