#include "crinv/series.hpp"

#include "crinv/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crinv {

namespace {

void require_same(const Series& a, const Series& b) {
    if (!same_context(a.ctx(), b.ctx())) throw std::invalid_argument("series: mismatched contexts");
}

long long clamp_order(long long v) { return std::min<long long>(v, kExact); }

}  // namespace

Series Series::constant(CtxPtr ctx, const Gaussian& c, int order) {
    Series s(ctx, order);
    s.add_term(Exponent(ctx->size(), 0), c);
    return s;
}

Series Series::var(CtxPtr ctx, std::size_t i, int order) {
    Exponent e(ctx->size(), 0);
    e.at(i) = 1;
    Series s(ctx, order);
    s.add_term(e, Gaussian(1));
    return s;
}

Series Series::monomial(CtxPtr ctx, Exponent e, const Gaussian& c, int order) {
    if (e.size() != ctx->size()) throw std::invalid_argument("series: exponent length mismatch");
    Series s(ctx, order);
    s.add_term(e, c);
    return s;
}

void Series::add_term(const Exponent& e, const Gaussian& c) {
    if (c.is_zero()) return;
    if (total_degree(e) > order_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Series::set_order(int n) {
    if (n < -1) n = -1;
    order_ = std::min(order_, n);
    while (!terms_.empty() && total_degree(terms_.rbegin()->first) > order_) terms_.erase(std::prev(terms_.end()));
}

Gaussian Series::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Gaussian() : it->second;
}

Gaussian Series::constant_term() const {
    if (terms_.empty()) return Gaussian();
    const auto& [e, c] = *terms_.begin();
    return total_degree(e) == 0 ? c : Gaussian();
}

int Series::valuation() const {
    if (terms_.empty()) return exact() ? kExact : order_ + 1;
    return total_degree(terms_.begin()->first);
}

int Series::degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.rbegin()->first);
}

bool Series::depends_on(std::size_t i) const {
    for (const auto& [e, c] : terms_)
        if (e[i] > 0) return true;
    return false;
}

Series Series::operator-() const {
    Series out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Series& Series::operator+=(const Series& o) {
    require_same(*this, o);
    int n = std::min(order_, o.order_);
    set_order(n);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    require_same(*this, o);
    int n = std::min(order_, o.order_);
    set_order(n);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Series& Series::operator*=(const Gaussian& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Series Series::mul_capped(const Series& a, const Series& b, int cap) {
    require_same(a, b);
    long long n = std::min<long long>(order_add(a.order_, b.valuation()), order_add(b.order_, a.valuation()));
    n = std::min<long long>(n, cap);
    Series out(a.ctx_, static_cast<int>(clamp_order(n)));
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const std::size_t m = a.nvars();
    Exponent e(m);
    for (const auto& [ea, ca] : a.terms_) {
        int da = total_degree(ea);
        if (da + b.valuation() > out.order_) break;
        for (const auto& [eb, cb] : b.terms_) {
            if (da + total_degree(eb) > out.order_) break;
            for (std::size_t i = 0; i < m; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
            auto it = out.terms_.find(e);
            if (it == out.terms_.end()) {
                out.terms_.emplace(e, ca * cb);
            } else {
                it->second += ca * cb;
            }
        }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
        if (it->second.is_zero()) it = out.terms_.erase(it);
        else ++it;
    }
    return out;
}

Series operator*(const Series& a, const Series& b) { return Series::mul_capped(a, b, kExact); }

Series Series::truncated(int degree) const {
    Series out(*this);
    out.set_order(degree);
    return out;
}

Series Series::derivative(std::size_t i) const {
    Series out(ctx_, exact() ? kExact : std::max(order_ - 1, -1));
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent f = e;
        f[i] -= 1;
        out.add_term(f, c * Gaussian(static_cast<long>(e[i])));
    }
    return out;
}

Series Series::conjugate() const {
    if (!ctx_->has_conjugation()) throw std::logic_error("series: context has no conjugation");
    Series out(ctx_, order_);
    const std::size_t m = nvars();
    Exponent f(m);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < m; ++i) f[ctx_->pair(i)] = e[i];
        out.terms_.emplace(f, c.conj());
    }
    return out;
}

bool Series::is_real() const { return *this == conjugate(); }

Series Series::inverse(int cap) const {
    Gaussian a0 = constant_term();
    if (order_ < 0 || a0.is_zero()) throw std::domain_error("series: inverse of a non-unit");
    Gaussian inv0 = a0.inverse();
    Series u = (*this - constant(ctx_, a0)) * inv0;
    if (u.is_zero() && u.exact()) return constant(ctx_, inv0);
    int target = std::min(order_, cap);
    Series sum = constant(ctx_, Gaussian(1), target);
    Series term = constant(ctx_, Gaussian(1), target);
    Series neg = -u;
    for (int k = 1; k <= target; ++k) {
        term = mul_capped(term, neg, target);
        if (term.is_zero()) break;
        sum += term;
    }
    sum.set_order(target);
    return sum * inv0;
}

Gaussian Series::evaluate(const std::vector<Gaussian>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("series: point dimension mismatch");
    bool origin = std::all_of(point.begin(), point.end(), [](const Gaussian& g) { return g.is_zero(); });
    if (origin) return constant_term();
    if (!exact()) throw std::domain_error("series: evaluation away from 0 needs an exact series");
    Gaussian sum;
    for (const auto& [e, c] : terms_) {
        Gaussian t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

bool Series::agrees_with(const Series& o, int n) const {
    if (!same_context(ctx_, o.ctx_)) return false;
    auto a = truncated(n), b = o.truncated(n);
    return a.terms_ == b.terms_;
}

bool operator==(const Series& a, const Series& b) {
    return same_context(a.ctx_, b.ctx_) && a.order_ == b.order_ && a.terms_ == b.terms_;
}

std::string monomial_str(const VariableContext& ctx, const Exponent& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx.name(i);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono = monomial_str(*ctx_, e);
        bool neg = false;
        std::string coef;
        if (c.is_real() || sgn(c.re()) == 0) {
            const mpq_class& v = c.is_real() ? c.re() : c.im();
            neg = sgn(v) < 0;
            mpq_class a = abs(v);
            std::string unit = c.is_real() ? "" : "i";
            if (a == 1) coef = unit.empty() ? "" : "i";
            else coef = rational_str(a) + unit;
            if (coef.empty() && mono.empty()) coef = "1";
        } else {
            coef = "(" + c.str() + ")";
        }
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        os << coef;
        if (!coef.empty() && !mono.empty()) os << "*";
        os << mono;
        first = false;
    }
    if (first) os << "0";
    if (!exact()) os << " + O(" << (order_ + 1) << ")";
    return os.str();
}

Series pow(const Series& s, int k, int cap) {
    Series out = Series::constant(s.ctx(), Gaussian(1));
    Series base = s;
    while (k > 0) {
        if (k & 1) out = Series::mul_capped(out, base, cap);
        k >>= 1;
        if (k) base = Series::mul_capped(base, base, cap);
    }
    return cap < kExact ? out.truncated(cap) : out;
}

Series compose(const Series& f, const std::vector<Series>& subst, int cap) {
    if (subst.size() != f.nvars()) throw std::invalid_argument("compose: substitution size mismatch");
    if (subst.empty()) throw std::invalid_argument("compose: empty substitution");
    const CtxPtr& target = subst[0].ctx();
    for (const auto& s : subst)
        if (!same_context(s.ctx(), target)) throw std::invalid_argument("compose: substitutions in different contexts");

    std::vector<bool> used(f.nvars(), false);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;

    long long v_all = kExact;
    bool const_used = false, const_any = false;
    for (std::size_t i = 0; i < subst.size(); ++i) {
        bool c = !subst[i].constant_term().is_zero();
        const_any = const_any || c;
        v_all = std::min<long long>(v_all, subst[i].valuation());
        if (!used[i]) continue;
        if (subst[i].order() < 0) throw std::domain_error("compose: substitution carries no information");
        const_used = const_used || c;
    }
    long long lim = cap;
    if (!f.exact()) {
        if (const_any) throw std::domain_error("compose: substituted series has a nonzero constant term");
        if (v_all < kExact) lim = std::min<long long>(lim, (static_cast<long long>(f.order()) + 1) * v_all - 1);
    }
    (void)const_used;
    int ord = static_cast<int>(clamp_order(lim));
    if (f.exact() && ord < kExact) {
        // Exact inputs whose composition fits under the cap stay exact.
        bool exact_in = true;
        long long top = 0;
        for (const auto& [e, c] : f.terms()) {
            long long d = 0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                exact_in = exact_in && subst[i].exact();
                d += static_cast<long long>(e[i]) * std::max(subst[i].degree(), 0);
            }
            top = std::max(top, d);
        }
        if (exact_in && top <= ord) ord = kExact;
    }

    std::vector<std::vector<Series>> powers(f.nvars());
    auto power = [&](std::size_t i, int k) -> const Series& {
        auto& p = powers[i];
        if (p.empty()) p.push_back(Series::constant(target, Gaussian(1)));
        while (static_cast<int>(p.size()) <= k) p.push_back(Series::mul_capped(p.back(), subst[i], ord));
        return p[k];
    };

    Series out(target, ord);
    int final_order = ord;
    const std::size_t m = f.nvars();
    for (const auto& [e, c] : f.terms()) {
        Series prod = Series::constant(target, c);
        for (std::size_t i = 0; i < m; ++i) {
            if (!e[i]) continue;
            prod = Series::mul_capped(prod, power(i, e[i]), ord);
        }
        final_order = std::min(final_order, prod.order());
        for (const auto& [pe, pc] : prod.terms()) out.add_term(pe, pc);
    }
    out.set_order(final_order);
    return out;
}

namespace {

using SeriesMatrix = std::vector<std::vector<Series>>;

SeriesMatrix matrix_inverse(const SeriesMatrix& M, int cap) {
    const std::size_t k = M.size();
    const CtxPtr& ctx = M[0][0].ctx();
    Matrix m0(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m0(i, j) = M[i][j].constant_term();
    auto inv0 = m0.inverse();
    if (!inv0) throw std::domain_error("graph_solve: singular Jacobian");
    // N = inv0 * (M - M0)
    SeriesMatrix N(k, std::vector<Series>(k, Series::zero(ctx)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Series acc = Series::zero(ctx);
            for (std::size_t l = 0; l < k; ++l) {
                Series d = M[l][j] - Series::constant(ctx, m0(l, j));
                acc += d * (*inv0)(i, l);
            }
            N[i][j] = acc.truncated(cap);
        }
    // (I + N)^{-1} = sum (-N)^p, then times inv0.
    SeriesMatrix S(k, std::vector<Series>(k, Series::zero(ctx)));
    SeriesMatrix P(k, std::vector<Series>(k, Series::zero(ctx)));
    for (std::size_t i = 0; i < k; ++i) {
        S[i][i] = Series::constant(ctx, Gaussian(1));
        P[i][i] = Series::constant(ctx, Gaussian(1));
    }
    for (int p = 1; p <= cap; ++p) {
        SeriesMatrix Q(k, std::vector<Series>(k, Series::zero(ctx)));
        bool nonzero = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Series acc = Series::zero(ctx, cap);
                for (std::size_t l = 0; l < k; ++l) acc -= Series::mul_capped(P[i][l], N[l][j], cap);
                if (!acc.is_zero()) nonzero = true;
                Q[i][j] = acc;
            }
        P = Q;
        if (!nonzero) break;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) S[i][j] += P[i][j];
    }
    SeriesMatrix out(k, std::vector<Series>(k, Series::zero(ctx)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Series acc = Series::zero(ctx);
            for (std::size_t l = 0; l < k; ++l) acc += S[i][l] * (*inv0)(l, j);
            out[i][j] = acc.truncated(cap);
        }
    return out;
}

}  // namespace

std::vector<Series> graph_solve(const std::vector<Series>& F, const std::vector<int>& pivots, int cap) {
    const std::size_t k = pivots.size();
    if (F.size() != k) throw std::invalid_argument("graph_solve: need one equation per pivot");
    if (k == 0) return {};
    const CtxPtr& ctx = F[0].ctx();
    const std::size_t m = ctx->size();
    for (const auto& f : F) {
        if (!f.constant_term().is_zero()) throw std::domain_error("graph_solve: F(0) != 0");
        if (f.order() < 1) throw std::domain_error("graph_solve: F carries no linear information");
    }
    Matrix J0(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Exponent e(m, 0);
            e[pivots[j]] = 1;
            J0(i, j) = F[i].coeff(e);
        }
    if (J0.rank() != k) throw std::domain_error("not a manifold ideal with these pivots");

    int target = cap;
    bool all_exact = true;
    for (const auto& f : F) {
        target = std::min(target, f.order());
        all_exact = all_exact && f.exact();
    }
    if (is_exact_order(target)) throw std::invalid_argument("graph_solve: a finite cap is required");

    std::vector<Series> phi(k, Series::zero(ctx));
    auto substitution = [&](int prec) {
        std::vector<Series> s;
        for (std::size_t i = 0; i < m; ++i) s.push_back(Series::var(ctx, i));
        for (std::size_t j = 0; j < k; ++j) {
            // The iterate is used as a polynomial; its correctness is tracked by `correct`.
            Series q(ctx);
            for (const auto& [e, c] : phi[j].terms())
                if (total_degree(e) <= prec) q.add_term(e, c);
            s[pivots[j]] = q;
        }
        return s;
    };

    int correct = 0;
    while (correct < target) {
        int prec = std::min(2 * correct + 1, target);
        auto s = substitution(prec);
        std::vector<Series> G;
        for (const auto& f : F) G.push_back(compose(f, s, prec));
        SeriesMatrix Jm(k, std::vector<Series>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) Jm[i][j] = compose(F[i].derivative(pivots[j]), s, prec);
        auto Jinv = matrix_inverse(Jm, prec);
        for (std::size_t j = 0; j < k; ++j) {
            Series delta = Series::zero(ctx, prec);
            for (std::size_t l = 0; l < k; ++l) delta += Series::mul_capped(Jinv[j][l], G[l], prec);
            Series next(ctx, prec);
            for (const auto& [e, c] : phi[j].terms()) next.add_term(e, c);
            phi[j] = next - delta;
        }
        correct = prec;
    }
    for (auto& p : phi) p.set_order(target);

    if (all_exact) {
        // Promote to exact when the truncated solution already solves F exactly.
        std::vector<Series> ex;
        for (const auto& p : phi) {
            Series q(ctx);
            for (const auto& [e, c] : p.terms()) q.add_term(e, c);
            ex.push_back(q);
        }
        std::vector<Series> s;
        for (std::size_t i = 0; i < m; ++i) s.push_back(Series::var(ctx, i));
        for (std::size_t j = 0; j < k; ++j) s[pivots[j]] = ex[j];
        bool solved = true;
        for (const auto& f : F)
            if (!compose(f, s).is_zero()) {
                solved = false;
                break;
            }
        if (solved) return ex;
    }
    return phi;
}

mpq_class weight_of(const Exponent& e, const std::vector<mpq_class>& weights) {
    mpq_class w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += weights[i] * static_cast<long>(e[i]);
    return w;
}

Series lowest_weighted_component(const Series& f, const std::vector<mpq_class>& weights, const mpq_class& k) {
    if (weights.size() != f.nvars()) throw std::invalid_argument("weights: size mismatch");
    mpq_class wmin = weights.empty() ? mpq_class(1) : *std::min_element(weights.begin(), weights.end());
    if (sgn(wmin) <= 0) throw std::invalid_argument("weights must be positive");
    if (!f.exact()) {
        mpq_class unseen = wmin * (f.order() + 1);
        if (unseen <= k) throw std::domain_error("weighted component: reliable order too small");
    }
    Series out(f.ctx());
    for (const auto& [e, c] : f.terms()) {
        mpq_class w = weight_of(e, weights);
        if (w < k) throw std::domain_error("weighted component: f has terms of lower weight");
        if (w == k) out.add_term(e, c);
    }
    return out;
}

Series recentre(const Series& f, const std::vector<Gaussian>& p) {
    if (!f.exact()) throw std::domain_error("recentre: only polynomials recentre exactly");
    std::vector<Series> s;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        s.push_back(Series::var(f.ctx(), i) + Series::constant(f.ctx(), p.at(i)));
    if (f.is_zero()) return f;
    return compose(f, s);
}

Series rebind(const Series& f, CtxPtr ctx) {
    if (ctx->size() != f.nvars()) throw std::invalid_argument("rebind: size mismatch");
    Series out(ctx, f.order());
    for (const auto& [e, c] : f.terms()) out.add_term(e, c);
    return out;
}

Series embed(const Series& f, CtxPtr ctx, const std::vector<int>& map) {
    Series out(ctx, f.order());
    Exponent g(ctx->size());
    for (const auto& [e, c] : f.terms()) {
        std::fill(g.begin(), g.end(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (map.at(i) < 0) throw std::invalid_argument("embed: variable has no image");
            g[map[i]] = static_cast<std::uint16_t>(g[map[i]] + e[i]);
        }
        out.add_term(g, c);
    }
    return out;
}

std::vector<Exponent> monomials_between(std::size_t nvars, int lo, int hi) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == nvars) {
            e[i] = static_cast<std::uint16_t>(left);
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = static_cast<std::uint16_t>(k);
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    for (int d = std::max(lo, 0); d <= hi; ++d) {
        if (nvars == 0) {
            if (d == 0) out.push_back(e);
            continue;
        }
        rec(0, d);
    }
    return out;
}

}  // namespace crinv
