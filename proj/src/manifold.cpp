#include "crinv/manifold.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crinv {

const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "undecidable";
    }
}

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::no || b == Tri::no) return Tri::no;
    if (a == Tri::undecidable || b == Tri::undecidable) return Tri::undecidable;
    return Tri::yes;
}

FormalSubmanifold::FormalSubmanifold(CtxPtr ctx, std::vector<int> pivots, std::vector<Series> phi, Field field)
    : ctx_(std::move(ctx)), pivots_(std::move(pivots)), phi_(std::move(phi)), field_(field) {
    if (pivots_.size() != phi_.size()) throw std::invalid_argument("submanifold: pivot/graph count mismatch");
    std::vector<bool> is_piv(ctx_->size(), false);
    for (int p : pivots_) {
        if (p < 0 || static_cast<std::size_t>(p) >= ctx_->size() || is_piv[p])
            throw std::invalid_argument("submanifold: bad pivot");
        is_piv[p] = true;
    }
    for (std::size_t i = 0; i < ctx_->size(); ++i)
        if (!is_piv[i]) free_.push_back(static_cast<int>(i));
    for (const auto& f : phi_) {
        for (int p : pivots_)
            if (f.depends_on(p)) throw std::invalid_argument("submanifold: graph depends on a pivot");
        if (!f.constant_term().is_zero()) throw std::invalid_argument("submanifold: graph does not pass through 0");
    }
}

int FormalSubmanifold::order() const {
    int n = kExact;
    for (const auto& f : phi_) n = std::min(n, f.order());
    return n;
}

Series FormalSubmanifold::generator(std::size_t j) const {
    return Series::var(ctx_, pivots_.at(j)) - phi_[j];
}

std::vector<Series> FormalSubmanifold::generators() const {
    std::vector<Series> out;
    for (std::size_t j = 0; j < pivots_.size(); ++j) out.push_back(generator(j));
    return out;
}

std::string FormalSubmanifold::str() const {
    std::ostringstream os;
    os << "ambient(";
    for (std::size_t i = 0; i < ctx_->size(); ++i) os << (i ? "," : "") << ctx_->name(i);
    os << ") " << (field_ == Field::real ? "real" : "complex") << " dim=" << dim() << " codim=" << codim() << " {";
    for (std::size_t j = 0; j < pivots_.size(); ++j) os << (j ? "; " : "") << generator(j).str();
    os << "}";
    return os.str();
}

bool same_submanifold(const FormalSubmanifold& a, const FormalSubmanifold& b, int order) {
    if (!same_context(a.ctx(), b.ctx()) || a.pivots() != b.pivots()) return false;
    for (std::size_t j = 0; j < a.phi().size(); ++j)
        if (!a.phi()[j].agrees_with(b.phi()[j], order)) return false;
    return true;
}

FormalSubmanifold make_submanifold(const std::vector<Series>& raw, Field field, int cap) {
    if (raw.empty()) throw std::invalid_argument("make_submanifold: no generators");
    const CtxPtr& ctx = raw[0].ctx();
    const std::size_t m = ctx->size();
    Matrix lin(raw.size(), m);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (!raw[j].constant_term().is_zero()) throw std::domain_error("make_submanifold: generator does not vanish at 0");
        if (raw[j].order() < 1) throw std::domain_error("not a manifold ideal");
        for (std::size_t i = 0; i < m; ++i) {
            Exponent e(m, 0);
            e[i] = 1;
            lin(j, i) = raw[j].coeff(e);
        }
    }
    auto piv = lin.rref();
    if (piv.size() != raw.size()) throw std::domain_error("not a manifold ideal");
    std::vector<int> pivots(piv.begin(), piv.end());
    auto phi = graph_solve(raw, pivots, cap);
    return FormalSubmanifold(ctx, pivots, phi, field);
}

FormalSubmanifold ambient_space(CtxPtr ctx, Field field) { return FormalSubmanifold(ctx, {}, {}, field); }

int Parametrization::order() const {
    int n = kExact;
    for (const auto& c : components) n = std::min(n, c.order());
    return n;
}

int Parametrization::second_degree(const Exponent& e) const {
    int d = 0;
    for (std::size_t i = static_cast<std::size_t>(split); i < e.size(); ++i) d += e[i];
    return d;
}

Series Parametrization::pullback(const Series& f, int cap) const { return compose(f, components, cap); }

namespace {

CtxPtr param_context(int n_first, int n_second) {
    std::vector<std::string> names;
    for (int i = 0; i < n_first; ++i) names.push_back("t" + std::to_string(i + 1));
    for (int i = 0; i < n_second; ++i) names.push_back("u" + std::to_string(i + 1));
    if (names.empty()) names.push_back("t0");  // zero-dimensional source keeps one dummy
    return VariableContext::holomorphic(names);
}

}  // namespace

Parametrization parametrize(const FormalSubmanifold& O) {
    Parametrization P;
    const int d = O.dim();
    P.params = param_context(d, 0);
    P.source_dim = d;
    P.split = d;
    const std::size_t m = O.ctx()->size();
    std::vector<Series> subst(m, Series::zero(P.params));
    for (int k = 0; k < d; ++k) subst[O.free_vars()[k]] = Series::var(P.params, k);
    P.components.assign(m, Series::zero(P.params));
    for (int k = 0; k < d; ++k) P.components[O.free_vars()[k]] = subst[O.free_vars()[k]];
    for (std::size_t j = 0; j < O.pivots().size(); ++j)
        P.components[O.pivots()[j]] = O.phi()[j].is_zero() && O.phi()[j].exact()
                                          ? Series::zero(P.params)
                                          : compose(O.phi()[j], subst);
    return P;
}

Membership ideal_membership(const Series& f, const FormalSubmanifold& O, int power) {
    if (power < 1) throw std::invalid_argument("ideal_membership: power must be >= 1");
    Membership m;
    int certified = 0;
    int v = normal_valuation(f, O, &certified);
    m.certified_order = certified;
    m.valuation = v >= kExact ? -1 : v;
    if (v < power) m.verdict = Tri::no;
    else if (is_exact_order(certified) || certified >= power) m.verdict = Tri::yes;
    else m.verdict = Tri::undecidable;
    return m;
}

Tri in_ideal(const Series& f, const FormalSubmanifold& O, int power) { return ideal_membership(f, O, power).verdict; }

int normal_valuation(const Series& f, const FormalSubmanifold& O, int* certified_order) {
    if (!same_context(f.ctx(), O.ctx())) throw std::invalid_argument("membership: context mismatch");
    const CtxPtr& ctx = O.ctx();
    std::vector<Series> subst;
    for (std::size_t i = 0; i < ctx->size(); ++i) subst.push_back(Series::var(ctx, i));
    for (std::size_t j = 0; j < O.pivots().size(); ++j) subst[O.pivots()[j]] += O.phi()[j];
    Series g = (f.is_zero() && f.exact()) ? f : compose(f, subst);
    if (certified_order) *certified_order = g.order();
    int v = kExact;
    for (const auto& [e, c] : g.terms()) {
        int d = 0;
        for (int p : O.pivots()) d += e[p];
        v = std::min(v, d);
    }
    return v;
}

Tri contains(const FormalSubmanifold& Y, const FormalSubmanifold& X) {
    Tri t = Tri::yes;
    for (const auto& g : Y.generators()) t = tri_and(t, in_ideal(g, X, 1));
    return t;
}

Parametrization joint_parametrize(const FormalSubmanifold& X, const FormalSubmanifold& Y, int cap) {
    if (contains(Y, X) != Tri::yes) throw std::domain_error("joint_parametrize: X is not contained in Y");
    Parametrization PY = parametrize(Y);
    const int dY = Y.dim();
    const int dX = X.dim();
    const CtxPtr& s_ctx = PY.params;
    std::vector<Series> pulled;
    for (const auto& g : X.generators()) pulled.push_back(PY.pullback(g, cap));

    Parametrization P;
    P.params = param_context(dX, dY - dX);
    P.source_dim = dY;
    P.split = dX;
    if (dY == 0) {
        P.components.assign(X.ctx()->size(), Series::zero(P.params));
        return P;
    }
    // Independent subset of the pulled-back generators.
    std::vector<Series> chosen;
    std::vector<Vec> lin;
    for (const auto& g : pulled) {
        Vec row(dY);
        for (int i = 0; i < dY; ++i) {
            Exponent e(dY, 0);
            e[i] = 1;
            row[i] = g.coeff(e);
        }
        auto trial = lin;
        trial.push_back(row);
        if (rank_of(trial, dY) > lin.size()) {
            lin.push_back(row);
            chosen.push_back(g);
        }
    }
    if (static_cast<int>(chosen.size()) != dY - dX) throw std::domain_error("joint_parametrize: X is not a submanifold of Y");

    std::vector<Series> comps;
    if (chosen.empty()) {
        comps = PY.components;
        for (auto& c : comps) c = rebind(c, P.params);
        P.components = comps;
        return P;
    }
    FormalSubmanifold Xs = make_submanifold(chosen, X.field(), cap);
    for (const auto& g : pulled)
        if (in_ideal(g, Xs, 1) == Tri::no) throw std::domain_error("joint_parametrize: pulled-back ideal is not a manifold ideal");
    // s_free = t', s_pivot = t'' + psi(t').
    std::vector<Series> s_subst(dY, Series::zero(P.params));
    for (int k = 0; k < dX; ++k) s_subst[Xs.free_vars()[k]] = Series::var(P.params, k);
    std::vector<Series> free_only = s_subst;
    for (std::size_t j = 0; j < Xs.pivots().size(); ++j) {
        Series psi = compose(Xs.phi()[j], free_only, cap);
        s_subst[Xs.pivots()[j]] = Series::var(P.params, dX + j) + psi;
    }
    (void)s_ctx;
    for (const auto& c : PY.components) P.components.push_back(compose(c, s_subst, cap));
    return P;
}

std::vector<VectorField> tangent_module_basis(const FormalSubmanifold& O) {
    std::vector<VectorField> out;
    for (int s : O.free_vars()) {
        VectorField X = VectorField::coordinate(O.ctx(), s);
        for (std::size_t j = 0; j < O.pivots().size(); ++j) X[O.pivots()[j]] = O.phi()[j].derivative(s);
        out.push_back(X);
    }
    return out;
}

Tri is_tangent(const VectorField& L, const FormalSubmanifold& O) {
    Tri t = Tri::yes;
    for (const auto& g : O.generators()) t = tri_and(t, in_ideal(L.apply(g), O, 1));
    return t;
}

VectorField approximate_in_larger(const VectorField& L, const FormalSubmanifold& O, const FormalSubmanifold& V) {
    if (is_tangent(L, O) == Tri::no) throw std::domain_error("approximate_in_larger: L is not tangent to O");
    if (contains(V, O) == Tri::no) throw std::domain_error("approximate_in_larger: O is not contained in V");
    auto basis = tangent_module_basis(V);
    VectorField out(L.ctx());
    for (std::size_t k = 0; k < basis.size(); ++k) out += L[V.free_vars()[k]] * basis[k];
    return out;
}

std::vector<Vec> tangent_space(const FormalSubmanifold& O) {
    std::vector<Vec> out;
    for (const auto& X : tangent_module_basis(O)) out.push_back(X.value_at_zero());
    return out;
}

FormalSubmanifold real_carrier(const FormalSubmanifold& V, CtxPtr complexified, const std::vector<int>& target, int cap) {
    std::vector<Series> raw;
    for (const auto& g : V.generators()) {
        Series h = embed(g, complexified, target);
        raw.push_back(h);
        raw.push_back(h.conjugate());
    }
    if (raw.empty()) return ambient_space(complexified, Field::real);
    return make_submanifold(raw, Field::real, cap);
}

}  // namespace crinv
