#include "crinv/cr.hpp"

#include <map>
#include <stdexcept>

namespace crinv {

CtxPtr holomorphic_part(const CtxPtr& ctx) {
    std::vector<std::string> names;
    for (int i : ctx->holomorphic_indices()) names.push_back(ctx->name(i));
    return VariableContext::holomorphic(names);
}

std::vector<int> holomorphic_slots(const CtxPtr& ctx) { return ctx->holomorphic_indices(); }

namespace {

void require_complexified(const FormalSubmanifold& O) {
    const auto& ctx = O.ctx();
    if (!ctx->has_conjugation()) throw std::invalid_argument("expected complexified (z, conj z) coordinates");
    for (std::size_t i = 0; i < ctx->size(); ++i)
        if (ctx->kind(i) == VariableContext::Kind::real)
            throw std::invalid_argument("expected complexified (z, conj z) coordinates");
}

// Series in the parameters of O mapped back to ambient coordinates via x_free.
Series to_ambient(const Series& s, const FormalSubmanifold& O) {
    std::vector<Series> sub;
    for (int k = 0; k < O.dim(); ++k) sub.push_back(Series::var(O.ctx(), O.free_vars()[k]));
    if (sub.empty()) sub.push_back(Series::zero(O.ctx()));
    return compose(s, sub);
}

}  // namespace

D10Module d10_module_basis(const FormalSubmanifold& O, int order) {
    require_complexified(O);
    const auto& ctx = O.ctx();
    auto holo = holomorphic_slots(ctx);
    const std::size_t n = holo.size();
    Parametrization P = parametrize(O);
    const std::size_t d = P.params->size();
    const int D = std::min(order, O.order());

    auto monos = monomials_between(d, 1, D);
    std::map<Exponent, std::size_t, GradedLex> mono_id;
    for (std::size_t k = 0; k < monos.size(); ++k) mono_id[monos[k]] = k;
    const std::size_t M = monos.size();
    const std::size_t split = n * M;
    auto col = [&](std::size_t j, const Exponent& m) -> std::size_t {
        if (total_degree(m) == 0) return split + j;
        return j * M + mono_id.at(m);
    };

    ProjectedKernel K(split, n);
    auto gens = O.generators();
    for (const auto& g : gens) {
        std::map<Exponent, SparseVec, GradedLex> rows;
        for (std::size_t j = 0; j < n; ++j) {
            Series c = P.pullback(g.derivative(holo[j]), D);
            for (const auto& [e, a] : c.terms()) {
                int de = total_degree(e);
                if (de > D) break;
                // constant unknown
                axpy(rows[e], a, SparseVec{{col(j, Exponent(d, 0)), Gaussian(1)}});
                for (const auto& m : monos) {
                    if (de + total_degree(m) > D) break;
                    Exponent sum(e);
                    for (std::size_t i = 0; i < d; ++i) sum[i] = static_cast<std::uint16_t>(sum[i] + m[i]);
                    axpy(rows[sum], a, SparseVec{{col(j, m), Gaussian(1)}});
                }
            }
        }
        for (auto& [e, row] : rows)
            if (!row.empty()) K.add_equation(std::move(row));
    }

    D10Module out;
    out.order = D;
    out.values = K.projection();
    for (const auto& p : out.values) {
        SparseVec x = K.lift(p);
        VectorField L(ctx, D);
        for (std::size_t j = 0; j < n; ++j) {
            Series a(P.params, D);
            a.add_term(Exponent(d, 0), p[j]);
            for (const auto& m : monos) {
                auto it = x.find(col(j, m));
                if (it != x.end()) a.add_term(m, it->second);
            }
            L[holo[j]] = to_ambient(a, O);
        }
        out.lifts.push_back(L);
    }
    return out;
}

CRVerdict cr_check(const FormalSubmanifold& O, int order) {
    require_complexified(O);
    const auto& ctx = O.ctx();
    auto holo = holomorphic_slots(ctx);
    const std::size_t n = holo.size();
    auto T = tangent_space(O);

    // Combinations of tangent vectors with vanishing antiholomorphic part.
    CRVerdict v;
    if (!T.empty()) {
        Matrix A(n, T.size());
        for (std::size_t c = 0; c < T.size(); ++c)
            for (std::size_t j = 0; j < n; ++j) A(j, c) = T[c][ctx->pair(holo[j])];
        std::vector<Vec> h;
        for (const auto& k : A.kernel()) {
            Vec w(n);
            for (std::size_t c = 0; c < T.size(); ++c)
                for (std::size_t j = 0; j < n; ++j) w[j] += k[c] * T[c][holo[j]];
            h.push_back(w);
        }
        v.h10 = span_basis(h, n);
    }
    auto D = d10_module_basis(O, order);
    v.d10 = D.values;
    v.order = D.order;
    v.cr = true;
    for (const auto& h : v.h10)
        if (!in_span(v.d10, h, n)) v.cr = false;
    if (v.cr) v.certificate = "CR up to order " + std::to_string(v.order);
    return v;
}

std::vector<Vec> j_closure(const std::vector<Vec>& vectors, const CtxPtr& ctx) {
    std::vector<Vec> all = vectors;
    for (const auto& x : vectors) {
        Vec y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (ctx->is_holomorphic(i)) y[i] = Gaussian::i() * x[i];
            else if (ctx->is_antiholomorphic(i)) y[i] = -Gaussian::i() * x[i];
            else throw std::logic_error("J: real coordinates carry no complex structure");
        }
        all.push_back(y);
    }
    return span_basis(all, ctx->size());
}

Complexification intrinsic_complexification(const FormalSubmanifold& O, int order) {
    require_complexified(O);
    const auto& ctx = O.ctx();
    auto holo = holomorphic_slots(ctx);
    const std::size_t n = holo.size();
    CtxPtr hctx = holomorphic_part(ctx);
    Parametrization P = parametrize(O);

    Complexification out;
    out.order = order;
    auto monos = monomials_between(n, 1, order);
    std::map<Exponent, Series, GradedLex> images;
    images[Exponent(n, 0)] = Series::constant(P.params, Gaussian(1));
    int reliable = kExact;
    for (const auto& m : monos) {
        std::size_t i = 0;
        while (m[i] == 0) ++i;
        Exponent prev(m);
        --prev[i];
        Series img = images.at(prev) * P.components[holo[i]];
        reliable = std::min(reliable, img.order());
        images[m] = img;
    }
    std::map<Exponent, std::size_t, GradedLex> eq_id;
    std::map<std::size_t, SparseVec> rows;
    for (std::size_t c = 0; c < monos.size(); ++c)
        for (const auto& [e, a] : images[monos[c]].terms()) {
            if (total_degree(e) > reliable) break;
            auto [it, fresh] = eq_id.emplace(e, eq_id.size());
            (void)fresh;
            rows[it->second][c] = a;
        }
    ProjectedKernel K(0, monos.size());
    for (auto& [k, row] : rows) K.add_equation(std::move(row));
    for (const auto& kv : K.projection()) {
        Series f(hctx);
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (!kv[c].is_zero()) f.add_term(monos[c], kv[c]);
        out.elimination.push_back(f);
    }

    auto verdict = cr_check(O, order);
    // Generators with independent linear parts.
    std::vector<Series> chosen;
    std::vector<Vec> lin;
    for (const auto& f : out.elimination) {
        Vec row(n);
        for (std::size_t j = 0; j < n; ++j) {
            Exponent e(n, 0);
            e[j] = 1;
            row[j] = f.coeff(e);
        }
        auto trial = lin;
        trial.push_back(row);
        if (rank_of(trial, n) > lin.size()) {
            lin.push_back(row);
            chosen.push_back(f);
        }
    }
    if (!verdict.cr) {
        out.failure = "not CR: H10_0 O is not contained in D10_O(0)";
        return out;
    }
    FormalSubmanifold V = chosen.empty() ? ambient_space(hctx, Field::complex) : make_submanifold(chosen, Field::complex, order);
    for (const auto& f : out.elimination)
        if (in_ideal(f, V, 1) == Tri::no) {
            out.failure = "elimination ideal is not a manifold ideal at this order";
            return out;
        }
    std::vector<Vec> proj;
    for (const auto& t : tangent_space(O)) {
        Vec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = t[holo[j]];
        proj.push_back(w);
    }
    out.tangent_identity = same_span(proj, tangent_space(V), n);
    if (!out.tangent_identity) {
        out.failure = "tangent identity T0O + JT0O = T0V fails";
        return out;
    }
    out.V = V;
    out.ok = true;
    return out;
}

bool in_elimination_span(const Complexification& c, const Series& f) {
    std::map<Exponent, std::size_t, GradedLex> ids;
    auto flatten = [&](const Series& s) {
        SparseVec v;
        for (const auto& [e, a] : s.terms()) v[ids.emplace(e, ids.size()).first->second] = a;
        return v;
    };
    EchelonBasis B;
    for (const auto& g : c.elimination) B.insert(flatten(g));
    return B.contains(flatten(f));
}

DVSplitting dv_splitting_check(const FormalSubmanifold& O, const FormalSubmanifold& V, int order) {
    require_complexified(O);
    DVSplitting out;
    const auto& ctx = O.ctx();
    FormalSubmanifold VR = real_carrier(V, ctx, holomorphic_slots(ctx), order);
    if (contains(VR, O) == Tri::no) {
        out.note = "precondition failed: O is not contained in V";
        return out;
    }
    auto TO = tangent_space(O);
    if (!same_span(j_closure(TO, ctx), tangent_space(VR), ctx->size())) {
        out.note = "precondition failed: T0O + J T0O differs from T0V";
        return out;
    }
    out.precondition = true;
    std::vector<Vec> values;
    for (const auto& X : tangent_module_basis(O)) {
        VectorField L = approximate_in_larger(X, O, VR);
        if (is_tangent(L, VR) == Tri::no || is_tangent(L, O) == Tri::no) {
            out.note = "lifted field is not tangent to both";
            return out;
        }
        values.push_back(L.value_at_zero());
    }
    out.holds = same_span(j_closure(values, ctx), tangent_space(VR), ctx->size());
    if (!out.holds) out.note = "lifted fields and their J-images do not span T0V";
    return out;
}

}  // namespace crinv
