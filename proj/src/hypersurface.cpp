#include "crinv/hypersurface.hpp"

#include <algorithm>
#include <stdexcept>

namespace crinv {

namespace {

Vec full_point(const CtxPtr& ctx, const Vec& holo_values) {
    auto holo = ctx->holomorphic_indices();
    if (holo_values.size() != holo.size()) throw std::invalid_argument("hypersurface: point dimension mismatch");
    Vec full(ctx->size());
    for (std::size_t k = 0; k < holo.size(); ++k) {
        full[holo[k]] = holo_values[k];
        int p = ctx->pair(holo[k]);
        if (p != holo[k]) full[p] = holo_values[k].conj();
    }
    return full;
}

bool is_origin(const Vec& p) {
    return std::all_of(p.begin(), p.end(), [](const Gaussian& g) { return g.is_zero(); });
}

std::string point_str(const Vec& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
    return s + ")";
}

}  // namespace

Series capped_mul(const Series& a, const Series& b, int cap) {
    if (a.exact() && b.exact()) {
        Series out = a * b;
        return out.degree() <= cap ? out : out.truncated(cap);
    }
    return Series::mul_capped(a, b, cap);
}

Series capped_apply(const VectorField& L, const Series& f, int cap) {
    if (L.order() >= kExact && f.exact()) {
        Series out = L.apply(f);
        return out.degree() <= cap ? out : out.truncated(cap);
    }
    return L.apply(f, cap);
}

VectorField capped_bracket(const VectorField& X, const VectorField& Y, int cap) {
    VectorField out(X.ctx());
    for (std::size_t j = 0; j < X.size(); ++j) out[j] = capped_apply(X, Y[j], cap) - capped_apply(Y, X[j], cap);
    return out;
}

Hypersurface make_hypersurface(const Series& r, const Vec& p, int order, int pivot) {
    const CtxPtr& ctx = r.ctx();
    if (!ctx->has_conjugation()) throw std::invalid_argument("hypersurface: expected complexified coordinates");
    if (!r.is_real()) throw std::invalid_argument("hypersurface: defining function is not real");
    Hypersurface S;
    S.ctx_ = ctx;
    S.order_ = order;
    S.holo_ = ctx->holomorphic_indices();
    S.base_ = p;
    Vec full = full_point(ctx, p);
    if (!r.evaluate(full).is_zero()) throw std::invalid_argument("hypersurface: base point is not on S");
    S.r_ = is_origin(p) ? r : recentre(r, full);
    if (pivot >= 0 && ctx->is_holomorphic(pivot) && !S.r_.derivative(pivot).constant_term().is_zero())
        S.pivot_ = pivot;
    for (int i : S.holo_)
        if (S.pivot_ < 0 && !S.r_.derivative(i).constant_term().is_zero()) {
            S.pivot_ = i;
            break;
        }
    if (S.pivot_ < 0) throw std::domain_error("not a hypersurface point");
    S.phi_ = graph_solve({S.r_}, {S.pivot_}, order)[0];
    S.h_ = Series::constant(ctx, Gaussian(1));
    S.dr_.assign(ctx->size(), Series::zero(ctx));
    for (int i : S.holo_) S.dr_[i] = S.restrict(S.r_.derivative(i));
    Series inv = S.dr_[S.pivot_].inverse(order);
    for (int j : S.holo_) {
        if (j == S.pivot_) continue;
        VectorField X(ctx);
        X[j] = Series::constant(ctx, Gaussian(1));
        X[S.pivot_] = -capped_mul(S.dr_[j], inv, order);
        S.h10_.push_back(X);
    }
    return S;
}

Series Hypersurface::restrict(const Series& f) const {
    if (!f.depends_on(pivot_)) return f;
    std::vector<Series> sub;
    for (std::size_t i = 0; i < ctx_->size(); ++i)
        sub.push_back(static_cast<int>(i) == pivot_ ? phi_ : Series::var(ctx_, i));
    return compose(f, sub, order_);
}

VectorField Hypersurface::restrict(const VectorField& X) const {
    VectorField out(ctx_);
    for (std::size_t i = 0; i < X.size(); ++i) out[i] = restrict(X[i]);
    return out;
}

Series Hypersurface::conj(const Series& f) const { return restrict(f.conjugate()); }

VectorField Hypersurface::conj(const VectorField& X) const { return restrict(X.conjugate()); }

Series Hypersurface::re(const Series& f, bool imaginary) const {
    Series g = imaginary ? Gaussian::i() * f : f;
    return (g + conj(g)) * Gaussian::frac(1, 2);
}

Series Hypersurface::theta(const VectorField& L) const {
    Series out = Series::zero(ctx_);
    for (int i : holo_) {
        if (L[i].is_zero() && L[i].exact()) continue;
        out += capped_mul(dr_[i], L[i], order_);
    }
    return capped_mul(h_, out, order_);
}

Vec Hypersurface::theta_at_base() const {
    Vec v;
    for (int i : holo_) v.push_back(h_.constant_term() * dr_[i].constant_term());
    return v;
}

bool Hypersurface::is_tangent(const VectorField& L) const {
    return restrict(capped_apply(restrict(L), r_, order_)).is_zero();
}

Hypersurface Hypersurface::with_multiplier(const Series& h) const {
    if (h.constant_term().is_zero()) throw std::invalid_argument("hypersurface: multiplier must be a unit");
    Hypersurface S = *this;
    S.h_ = restrict(h);
    return S;
}

Hypersurface Hypersurface::with_order(int order) const {
    if (order >= order_) return *this;
    Hypersurface S = make_hypersurface(r_, Vec(holo_.size()), order, pivot_);
    S.base_ = base_;
    S.h_ = h_.truncated(order);
    return S;
}

SubbundleFrame h10_bundle(const Hypersurface& S) { return SubbundleFrame{S.h10()}; }

std::vector<Vec> frame_values(const Hypersurface& S, const SubbundleFrame& E) {
    std::vector<Vec> out;
    for (const auto& F : E.frame) {
        Vec v;
        for (int i : S.holomorphic()) v.push_back(F[i].constant_term());
        out.push_back(v);
    }
    return out;
}

SubbundleFrame kernel_frame(const Hypersurface& S, const SubbundleFrame& E,
                            std::vector<std::vector<Series>> values, std::vector<int>* pivots) {
    const int N = S.order();
    std::vector<VectorField> F = E.frame;
    for (std::size_t l = 0; l < values.size(); ++l) {
        std::size_t a0 = F.size();
        for (std::size_t a = 0; a < F.size(); ++a)
            if (!values[l][a].constant_term().is_zero()) {
                a0 = a;
                break;
            }
        if (a0 == F.size()) throw std::domain_error("dependent forms at base point");
        if (pivots) pivots->push_back(static_cast<int>(a0));
        Series inv = values[l][a0].inverse(N);
        std::vector<VectorField> G;
        std::vector<std::vector<Series>> next(values.size());
        for (std::size_t b = 0; b < F.size(); ++b) {
            if (b == a0) continue;
            Series c = capped_mul(values[l][b], inv, N);
            VectorField Y = F[b];
            if (!c.is_zero() || !c.exact())
                for (std::size_t i = 0; i < Y.size(); ++i) Y[i] -= capped_mul(c, F[a0][i], N);
            G.push_back(Y);
            for (std::size_t m = l + 1; m < values.size(); ++m)
                next[m].push_back(values[m][b] - capped_mul(c, values[m][a0], N));
        }
        F = std::move(G);
        for (std::size_t m = l + 1; m < values.size(); ++m) values[m] = std::move(next[m]);
    }
    return SubbundleFrame{F};
}

SubbundleFrame subbundle_from_covectors(const Hypersurface& S, const std::vector<Vec>& covectors) {
    auto E = h10_bundle(S);
    std::vector<std::vector<Series>> values;
    for (const auto& c : covectors) {
        if (c.size() != S.n_plus_1()) throw std::invalid_argument("subbundle: covector dimension mismatch");
        std::vector<Series> row;
        for (const auto& X : E.frame) {
            Series s = Series::zero(S.ctx());
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!c[k].is_zero()) s += c[k] * X[S.holomorphic()[k]];
            row.push_back(s);
        }
        values.push_back(row);
    }
    return kernel_frame(S, E, values);
}

Series levi_tensor(const Hypersurface& S, const VectorField& L2, const VectorField& L1) {
    return S.theta(capped_bracket(L2, L1, S.order()));
}

Matrix levi_matrix(const Hypersurface& S) {
    const auto& X = S.h10();
    Matrix M(X.size(), X.size());
    for (std::size_t a = 0; a < X.size(); ++a)
        for (std::size_t b = 0; b < X.size(); ++b) M(a, b) = levi_tensor(S, X[a], S.conj(X[b])).constant_term();
    return M;
}

Vec DualForm::at_base() const {
    Vec v;
    for (const auto& s : value) v.push_back(s.constant_term());
    return v;
}

bool DualForm::vanishes_at_base() const { return is_zero(at_base()); }

Series form_on(const Hypersurface& S, const DualForm& w, const VectorField& F) {
    if (w.order_t == 2) return levi_tensor(S, F, w.word[0]);
    return capped_apply(F, w.f, S.order());
}

DualForm theta_dual_form(const Hypersurface& S, const std::vector<VectorField>& word, bool imaginary) {
    if (word.empty()) throw std::invalid_argument("dual form: empty word");
    const int N = S.order();
    DualForm w;
    w.word = word;
    w.order_t = static_cast<int>(word.size()) + 1;
    if (word.size() >= 2) {
        w.imaginary = imaginary;
        Series g = levi_tensor(S, word[1], word[0]);
        for (std::size_t s = 2; s < word.size(); ++s) g = capped_apply(word[s], g, N);
        w.f = S.re(g, imaginary);
    }
    for (const auto& X : S.h10()) w.value.push_back(form_on(S, w, X));
    return w;
}

SubbundleFrame special_subbundle(const Hypersurface& S, const std::vector<DualForm>& forms) {
    auto E = h10_bundle(S);
    if (forms.empty()) return E;
    std::vector<Vec> at;
    for (const auto& w : forms) at.push_back(w.at_base());
    if (rank_of(at, E.rank()) < forms.size()) throw std::domain_error("dependent forms at base point");
    std::vector<std::vector<Series>> values;
    for (const auto& w : forms) values.push_back(w.value);
    return kernel_frame(S, E, values);
}

std::optional<Vec> point_on(const Series& r, const Vec& partial, int pivot_index) {
    const CtxPtr& ctx = r.ctx();
    auto holo = ctx->holomorphic_indices();
    int s = holo.at(pivot_index);
    int sb = ctx->pair(s);
    for (const auto& [e, c] : r.terms())
        if (e[s] + (sb != s ? e[sb] : 0) > 1) return std::nullopt;
    Vec p = partial;
    Gaussian iv(0, partial[pivot_index].im());
    p[pivot_index] = iv;
    Gaussian r0 = r.evaluate(full_point(ctx, p));
    p[pivot_index] = iv + Gaussian(1);
    Gaussian slope = r.evaluate(full_point(ctx, p)) - r0;
    if (slope.is_zero()) return std::nullopt;
    Gaussian u = -r0 / slope;
    if (!u.is_real()) return std::nullopt;
    p[pivot_index] = iv + u;
    return p;
}

bool is_psd(const Matrix& A) {
    const std::size_t n = A.rows();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        Gaussian d = A.submatrix(idx, idx).det();
        if (sgn(d.re()) < 0) return false;
    }
    return true;
}

PsdReport pseudoconvexity_sample_check(const Series& r, const std::vector<Vec>& points, int order) {
    PsdReport rep;
    for (const auto& p : points) {
        Hypersurface S = make_hypersurface(r, p, order);
        if (!is_psd(levi_matrix(S))) {
            rep.holds = false;
            rep.violations.push_back("Levi matrix not positive semidefinite at " + point_str(p));
        }
    }
    return rep;
}

}  // namespace crinv
