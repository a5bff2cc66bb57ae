#include "crinv/types.hpp"

#include <map>
#include <stdexcept>

namespace crinv {

std::string Bounded::str() const { return (at_least ? "≥" : "") + std::to_string(value); }

namespace {

class Flattener {
public:
    SparseVec series(const Series& s, int degree, std::size_t slot = 0) {
        SparseVec v;
        for (const auto& [e, c] : s.terms()) {
            if (total_degree(e) > degree) break;
            v[id(slot, e)] = c;
        }
        return v;
    }
    SparseVec field(const VectorField& X, int degree) {
        SparseVec v;
        for (std::size_t i = 0; i < X.size(); ++i)
            for (auto& [k, c] : series(X[i], degree, i)) v[k] = c;
        return v;
    }
    std::size_t id(std::size_t slot, const Exponent& e) {
        auto [it, fresh] = ids_.emplace(std::make_pair(slot, e), ids_.size());
        (void)fresh;
        return it->second;
    }

private:
    std::map<std::pair<std::size_t, Exponent>, std::size_t> ids_;
};

// Differential operator sum_alpha c_alpha d^alpha in the holomorphic directions.
using Operator = std::map<Exponent, Series, GradedLex>;

void add_to(Operator& P, const Exponent& a, const Series& s) {
    auto it = P.find(a);
    if (it == P.end()) P.emplace(a, s);
    else it->second += s;
}

struct MonomialIndex {
    std::vector<Exponent> monos;
    std::map<Exponent, std::size_t, GradedLex> id;
    std::vector<std::size_t> upto;  // upto[d] = number of monomials of degree <= d

    MonomialIndex(std::size_t n, int J) {
        monos = monomials_between(n, 0, J);
        for (std::size_t k = 0; k < monos.size(); ++k) id[monos[k]] = k;
        upto.assign(J + 1, 0);
        for (const auto& m : monos) ++upto[total_degree(m)];
        for (int d = 1; d <= J; ++d) upto[d] += upto[d - 1];
    }
};

Gaussian factorial_weight(const Exponent& a) {
    mpz_class f = 1;
    for (auto k : a)
        for (int j = 2; j <= k; ++j) f *= j;
    return Gaussian(mpq_class(f));
}

// Functionals f -> (L^t...L^1 f)(p) on holomorphic polynomials of degree <= J,
// grouped by word length t = 0..max_len.
std::vector<std::vector<SparseVec>> word_functionals(const Hypersurface& S, const std::vector<VectorField>& letters,
                                                     const MonomialIndex& M, int J, int max_len) {
    const auto& holo = S.holomorphic();
    const std::size_t n = holo.size();
    std::vector<std::vector<SparseVec>> out(max_len + 1);
    auto functional = [&](const Operator& P) {
        SparseVec v;
        for (const auto& [a, c] : P) {
            Gaussian x = c.constant_term();
            if (!x.is_zero()) v[M.id.at(a)] = x * factorial_weight(a);
        }
        return v;
    };
    Operator id;
    id[Exponent(n, 0)] = Series::constant(S.ctx(), Gaussian(1));
    std::vector<Operator> level{id};
    out[0].push_back(functional(id));
    for (int t = 1; t <= max_len && !level.empty(); ++t) {
        const int cap = max_len - t;
        Flattener flat;
        EchelonBasis span;
        std::vector<Operator> next;
        for (const auto& P : level)
            for (const auto& L : letters) {
                Operator Q;
                for (const auto& [a, c] : P) {
                    Series d = capped_apply(L, c, cap);
                    if (!d.is_zero()) add_to(Q, a, d);
                    if (total_degree(a) >= J) continue;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (L[holo[i]].is_zero()) continue;
                        Exponent b = a;
                        ++b[i];
                        Series m = capped_mul(c, L[holo[i]], cap);
                        if (!m.is_zero()) add_to(Q, b, m);
                    }
                }
                SparseVec key;
                for (const auto& [a, c] : Q)
                    for (auto& [k, x] : flat.series(c, cap, M.id.at(a))) key[k] = x;
                if (!span.insert(std::move(key))) continue;
                auto f = functional(Q);
                if (!f.empty()) out[t].push_back(std::move(f));
                next.push_back(std::move(Q));
            }
        level = std::move(next);
    }
    return out;
}

// Annihilator of the given functionals among polynomials on the first `cols`
// monomials, as an echelon basis with lowest-degree pivots.
EchelonBasis annihilator(const std::vector<SparseVec>& functionals, std::size_t cols) {
    EchelonBasis rows;
    for (const auto& f : functionals) {
        SparseVec g;
        for (const auto& [k, x] : f)
            if (k < cols) g[k] = x;
        rows.insert(std::move(g));
    }
    // Back-substitute to reduced row echelon form.
    std::map<std::size_t, SparseVec> R(rows.rows().begin(), rows.rows().end());
    for (auto it = R.rbegin(); it != R.rend(); ++it)
        for (auto jt = R.begin(); jt->first < it->first; ++jt) {
            auto e = jt->second.find(it->first);
            if (e == jt->second.end()) continue;
            Gaussian f = -e->second;
            axpy(jt->second, f, it->second);
        }
    EchelonBasis I;
    for (std::size_t c = 0; c < cols; ++c) {
        if (R.count(c)) continue;
        SparseVec x{{c, Gaussian(1)}};
        for (const auto& [p, row] : R) {
            auto e = row.find(c);
            if (e != row.end()) x[p] = -e->second;
        }
        I.insert(std::move(x));
    }
    return I;
}

// Lowest degree <= maxdeg of the normal form of r modulo I + conj(I), or maxdeg + 1.
int normal_form_valuation(const Hypersurface& S, const EchelonBasis& I, const MonomialIndex& M, int maxdeg) {
    const auto& ctx = S.ctx();
    const auto& holo = S.holomorphic();
    const std::size_t n = holo.size();
    std::vector<int> hpos(ctx->size(), -1), bpos(ctx->size(), -1);
    for (std::size_t k = 0; k < n; ++k) {
        hpos[holo[k]] = static_cast<int>(k);
        bpos[ctx->pair(holo[k])] = static_cast<int>(k);
    }
    std::map<std::size_t, SparseVec> nf;
    auto normal = [&](const Exponent& a) -> const SparseVec& {
        std::size_t id = M.id.at(a);
        auto it = nf.find(id);
        if (it == nf.end()) it = nf.emplace(id, I.reduce(SparseVec{{id, Gaussian(1)}})).first;
        return it->second;
    };
    std::map<std::pair<std::size_t, std::size_t>, Gaussian> acc;
    for (const auto& [e, c] : S.r().terms()) {
        if (total_degree(e) > maxdeg) break;
        Exponent a(n, 0), b(n, 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (hpos[i] >= 0) a[hpos[i]] = e[i];
            else if (bpos[i] >= 0) b[bpos[i]] = e[i];
            else throw std::logic_error("contact order: unexpected coordinate");
        }
        const SparseVec& na = normal(a);
        const SparseVec& nb = normal(b);
        for (const auto& [ia, ca] : na) {
            int da = total_degree(M.monos[ia]);
            if (da > maxdeg) continue;
            for (const auto& [ib, cb] : nb) {
                if (da + total_degree(M.monos[ib]) > maxdeg) continue;
                acc[{ia, ib}] += c * ca * cb.conj();
            }
        }
    }
    int v = maxdeg + 1;
    for (const auto& [k, x] : acc)
        if (!x.is_zero()) v = std::min(v, total_degree(M.monos[k.first]) + total_degree(M.monos[k.second]));
    return v;
}

std::vector<VectorField> truncated_all(const std::vector<VectorField>& fields, int degree) {
    std::vector<VectorField> out;
    for (const auto& X : fields) {
        int deg = -1;
        for (std::size_t i = 0; i < X.size(); ++i) deg = std::max(deg, X[i].degree());
        out.push_back(X.order() >= kExact && deg <= degree ? X : X.truncated(degree));
    }
    return out;
}

}  // namespace

std::vector<VectorField> frame_letters(const Hypersurface& S, const SubbundleFrame& E, int cap) {
    std::vector<VectorField> out = truncated_all(E.frame, cap);
    for (const auto& F : E.frame) out.push_back(S.conj(F.truncated(cap)));
    return out;
}

Bounded commutator_type(const Hypersurface& S, const SubbundleFrame& E, int word_bound) {
    if (word_bound < 2) throw std::invalid_argument("commutator type: word bound must be at least 2");
    if (E.rank() == 0) return Bounded::lower(word_bound);
    auto letters = frame_letters(S, E, word_bound);
    std::vector<VectorField> level = letters;
    for (int t = 2; t <= word_bound; ++t) {
        const int cap = word_bound - t;
        Flattener flat;
        EchelonBasis span;
        std::vector<VectorField> next;
        for (const auto& L : letters)
            for (const auto& B : level) {
                VectorField C = capped_bracket(L, B, cap);
                if (!span.insert(flat.field(C, cap))) continue;
                if (!S.theta(C).constant_term().is_zero()) return Bounded::finite(t);
                next.push_back(std::move(C));
            }
        if (next.empty()) break;
        level = std::move(next);
    }
    return Bounded::lower(word_bound);
}

Bounded levi_type(const Hypersurface& S, const SubbundleFrame& E, int word_bound) {
    if (word_bound < 2) throw std::invalid_argument("levi type: word bound must be at least 2");
    if (E.rank() == 0) return Bounded::lower(word_bound);
    auto letters = frame_letters(S, E, word_bound);
    std::vector<Series> level;
    {
        const int cap = word_bound - 2;
        Flattener flat;
        EchelonBasis span;
        for (const auto& A : letters)
            for (const auto& B : letters) {
                Series g = S.theta(capped_bracket(A, B, cap + 1));
                if (!span.insert(flat.series(g, cap))) continue;
                if (!g.constant_term().is_zero()) return Bounded::finite(2);
                level.push_back(std::move(g));
            }
    }
    for (int t = 3; t <= word_bound && !level.empty(); ++t) {
        const int cap = word_bound - t;
        Flattener flat;
        EchelonBasis span;
        std::vector<Series> next;
        for (const auto& L : letters)
            for (const auto& g : level) {
                Series h = capped_apply(L, g, cap);
                if (!span.insert(flat.series(h, cap))) continue;
                if (!h.constant_term().is_zero()) return Bounded::finite(t);
                next.push_back(std::move(h));
            }
        level = std::move(next);
    }
    return Bounded::lower(word_bound);
}

ComplexOrbit complex_formal_orbit(const Hypersurface& S, const SubbundleFrame& E, int jet_order) {
    const std::size_t n = S.n_plus_1();
    MonomialIndex M(n, jet_order);
    ComplexOrbit out;
    out.jet_order = jet_order;
    std::vector<std::string> names;
    for (int i : S.holomorphic()) names.push_back(S.ctx()->name(i));
    out.hctx = VariableContext::holomorphic(names);
    for (int len = 2 * jet_order;; len += jet_order) {
        auto letters = E.rank() ? frame_letters(S, E, len) : std::vector<VectorField>{};
        auto levels = word_functionals(S, letters, M, jet_order, len);
        std::vector<SparseVec> all;
        for (auto& l : levels)
            for (auto& f : l) all.push_back(std::move(f));
        EchelonBasis I = annihilator(all, M.monos.size());
        out.ideal.clear();
        out.manifold.reset();
        out.word_length = len;
        for (const auto& [p, row] : I.rows()) {
            Series f(out.hctx);
            for (const auto& [k, x] : row) f.add_term(M.monos[k], x);
            out.ideal.push_back(f);
        }
        std::vector<Series> chosen;
        std::vector<Vec> lin;
        for (const auto& f : out.ideal) {
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
        FormalSubmanifold V = chosen.empty() ? ambient_space(out.hctx, Field::complex)
                                             : make_submanifold(chosen, Field::complex, jet_order);
        bool ok = true;
        for (const auto& f : out.ideal)
            if (in_ideal(f.truncated(jet_order), V, 1) == Tri::no) ok = false;
        if (ok) out.manifold = V;
        if (ok || len >= 4 * jet_order) break;
    }
    return out;
}

Bounded contact_order(const Hypersurface& S, const std::vector<Series>& ideal, int jet_order) {
    MonomialIndex M(S.n_plus_1(), jet_order);
    // Vector-space span of the ideal up to degree jet_order.
    EchelonBasis I;
    for (const auto& f : ideal) {
        int val = f.valuation();
        for (const auto& m : M.monos) {
            if (val + total_degree(m) > jet_order) break;
            SparseVec v;
            for (const auto& [e, c] : f.terms()) {
                Exponent g = e;
                for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<std::uint16_t>(g[i] + m[i]);
                if (total_degree(g) > jet_order) break;
                v[M.id.at(g)] = c;
            }
            I.insert(std::move(v));
        }
    }
    int v = normal_form_valuation(S, I, M, jet_order);
    return v <= jet_order ? Bounded::finite(v) : Bounded::lower(jet_order);
}

Bounded contact_type(const Hypersurface& S, const SubbundleFrame& E, int jet_order) {
    const int J = jet_order - 1;
    MonomialIndex M(S.n_plus_1(), std::max(J, 0));
    auto letters = E.rank() ? frame_letters(S, E, jet_order) : std::vector<VectorField>{};
    auto levels = word_functionals(S, letters, M, std::max(J, 0), std::max(J, 0));
    int best = 0;
    std::vector<SparseVec> acc;
    for (int k = 1; k <= jet_order; ++k) {
        for (const auto& f : levels[k - 1]) acc.push_back(f);
        EchelonBasis I = annihilator(acc, M.upto[k - 1]);
        if (normal_form_valuation(S, I, M, k - 1) >= k) best = k;
    }
    return best >= jet_order ? Bounded::lower(jet_order) : Bounded::finite(best);
}

RealOrbit real_formal_orbit(const Hypersurface& S, const SubbundleFrame& E) {
    RealOrbit R;
    OrbitOptions opt;
    opt.cap = S.order();
    opt.dim_upper_bound = 2 * static_cast<int>(S.n_plus_1()) - 1;
    if (E.rank() == 0) {
        R.result.dim = 0;
        R.result.closed = true;
        std::vector<int> piv;
        std::vector<Series> zero;
        for (std::size_t i = 0; i < S.ctx()->size(); ++i) {
            piv.push_back(static_cast<int>(i));
            zero.push_back(Series::zero(S.ctx()));
        }
        R.result.orbit = FormalSubmanifold(S.ctx(), piv, zero, Field::real);
    } else {
        R.result = lie_orbit(E.frame, Field::real, opt);
    }
    R.inside_s = in_ideal(S.r(), R.result.orbit, 1) != Tri::no;
    return R;
}

HuangYin huang_yin_check(const Hypersurface& S, const SubbundleFrame& E, bool complexify) {
    HuangYin H;
    H.orbit = real_formal_orbit(S, E);
    H.cr = cr_check(H.orbit.manifold(), S.order());
    H.holds = H.cr.cr;
    if (H.holds && complexify) H.complexification = intrinsic_complexification(H.orbit.manifold(), S.order());
    return H;
}

}  // namespace crinv
