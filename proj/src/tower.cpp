#include "crinv/tower.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace crinv {

std::string Multitype::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? ", " : "") + entries[i].str();
    return s + ")";
}

int Multitype::infinite_count() const {
    int k = 0;
    for (const auto& e : entries) k += e.at_least;
    return k;
}

bool lex_less(const std::vector<Bounded>& a, const std::vector<Bounded>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].rank() != b[i].rank()) return a[i].rank() < b[i].rank();
    }
    return a.size() < b.size();
}

bool q_finite(const Multitype& m, int q) {
    if (q < 1 || q > static_cast<int>(m.entries.size())) throw std::invalid_argument("q_finite: q out of range");
    return m.infinite_count() < q;
}

namespace {

std::string point_str(const Vec& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
    return s + ")";
}

std::string key_of(const Vec& v) {
    std::string s;
    for (const auto& x : v) s += x.str() + ";";
    return s;
}

VectorField letter_field(const Hypersurface& S, const std::vector<VectorField>& frame, const Letter& l) {
    VectorField X = combine(frame, l.coeffs);
    return l.conjugated ? S.conj(X) : X;
}

std::vector<Vec> combination_coeffs(std::size_t q, int mode) {
    std::vector<Vec> out;
    for (std::size_t j = 0; j < q; ++j) {
        Vec e(q);
        e[j] = Gaussian(1);
        out.push_back(e);
    }
    if (mode == 0 && q >= 2 && q <= 3) {
        for (std::size_t j = 0; j < q; ++j)
            for (std::size_t k = j + 1; k < q; ++k)
                for (const Gaussian& c : {Gaussian(1), Gaussian(-1), Gaussian::i(), -Gaussian::i()}) {
                    Vec e(q);
                    e[j] = Gaussian(1);
                    e[k] = c;
                    out.push_back(e);
                }
    }
    if (mode <= 1 && q >= 3) out.push_back(Vec(q, Gaussian(1)));
    if (mode == 1 && q == 2) out.push_back(Vec(q, Gaussian(1)));
    return out;
}

std::vector<VectorField> truncated_frame(const std::vector<VectorField>& F, int degree) {
    std::vector<VectorField> out;
    for (const auto& X : F) out.push_back(X.truncated(degree));
    return out;
}

Vec covector_at_base(const Hypersurface& S, const std::vector<VectorField>& frame, const Series& f) {
    Vec v;
    for (const auto& F : frame) v.push_back(capped_apply(F, f, 0).constant_term());
    return v;
}

struct Advance {
    DualForm form;
    SubbundleFrame next;
};

// Builds the form of a choice on E and its kernel, eliminating choice.pivot.
std::optional<Advance> advance(const Hypersurface& S, const SubbundleFrame& E, const StageChoice& c) {
    std::vector<VectorField> word;
    for (const auto& l : c.word) word.push_back(letter_field(S, E.frame, l));
    Advance a;
    a.form = theta_dual_form(S, word, c.imaginary);
    std::vector<Series> values;
    for (const auto& F : E.frame) values.push_back(form_on(S, a.form, F));
    if (c.pivot < 0 || c.pivot >= static_cast<int>(E.rank())) return std::nullopt;
    if (values[c.pivot].constant_term().is_zero()) return std::nullopt;
    SubbundleFrame reordered;
    std::vector<Series> vals;
    reordered.frame.push_back(E.frame[c.pivot]);
    vals.push_back(values[c.pivot]);
    for (std::size_t b = 0; b < E.rank(); ++b)
        if (static_cast<int>(b) != c.pivot) {
            reordered.frame.push_back(E.frame[b]);
            vals.push_back(values[b]);
        }
    a.next = kernel_frame(S, reordered, {vals});
    return a;
}

class TowerSearch {
public:
    TowerSearch(const Hypersurface& S, const TowerOptions& opt) : S_(S), opt_(opt), n_(S.h10().size()) {}

    Multitype run() {
        Tower T;
        T.stages.push_back(h10_bundle(S_));
        std::vector<Bounded> entries;
        descend(T, entries);
        Multitype m = *best_;
        m.bound = opt_.word_bound;
        m.words_examined = words_;
        m.branches = branches_;
        m.reduced_letters = reduced_;
        m.truncated_search = truncated_;
        return m;
    }

private:
    void finish(const Tower& T, const std::vector<Bounded>& entries) {
        if (best_ && !lex_less(entries, best_->entries)) return;
        Multitype m;
        m.entries = entries;
        m.certificate = T;
        best_ = std::move(m);
    }

    bool dominated(const std::vector<Bounded>& prefix) const {
        if (!best_) return false;
        std::vector<Bounded> head(best_->entries.begin(), best_->entries.begin() + prefix.size());
        return lex_less(head, prefix);
    }

    void descend(Tower& T, std::vector<Bounded>& entries) {
        const SubbundleFrame E = T.stages.back();
        if (entries.size() == n_ || E.rank() == 0) {
            finish(T, entries);
            return;
        }
        int t = minimal_form_order(S_, E, opt_.word_bound);
        if (t < 0) {
            auto full = entries;
            while (full.size() < n_) full.push_back(Bounded::lower(opt_.word_bound));
            if (!dominated(full)) finish(T, full);
            return;
        }
        entries.push_back(Bounded::finite(t));
        if (!dominated(entries)) {
            auto cands = collect(E, t);
            int taken = 0;
            for (const auto& c : cands) {
                if (taken++ >= opt_.branch_cap) break;
                auto a = advance(S_, E, c);
                if (!a) continue;
                ++branches_;
                T.choices.push_back(c);
                T.forms.push_back(a->form);
                if (t >= 3) T.associated.push_back(a->form.f);
                T.stages.push_back(a->next);
                descend(T, entries);
                T.stages.pop_back();
                if (t >= 3) T.associated.pop_back();
                T.forms.pop_back();
                T.choices.pop_back();
                if (dominated(entries)) break;
            }
        }
        entries.pop_back();
    }

    // Distinct kernels of order-t forms nonvanishing on E, one choice each.
    std::vector<StageChoice> collect(const SubbundleFrame& E, int t) {
        const std::size_t q = E.rank();
        const int len = t - 1;
        int mode = 0;
        auto count = [&](int m) {
            double s = 2.0 * combination_coeffs(q, m).size();
            double c = 1;
            for (int i = 0; i < len; ++i) c *= s;
            return c;
        };
        while (mode < 2 && count(mode) > static_cast<double>(opt_.word_budget)) ++mode;
        if (mode > 0) reduced_ = true;
        auto coeffs = combination_coeffs(q, mode);
        std::vector<Letter> symbols;
        for (bool cj : {false, true})
            for (const auto& c : coeffs) symbols.push_back(Letter{c, cj});
        auto frame = truncated_frame(E.frame, t + 1);
        std::vector<VectorField> fields;
        for (const auto& l : symbols) fields.push_back(letter_field(S_, frame, l));
        auto frame1 = truncated_frame(E.frame, 1);

        std::vector<StageChoice> out;
        std::set<std::string> seen;
        auto record = [&](const std::vector<int>& idx, bool imag, const Vec& v) {
            if (is_zero(v)) return;
            Vec nv = normalized(v);
            if (!seen.insert(key_of(nv)).second) return;
            StageChoice c;
            c.order_t = t;
            for (int i : idx) c.word.push_back(symbols[i]);
            c.imaginary = imag;
            c.kernel = nv;
            for (std::size_t b = 0; b < v.size(); ++b)
                if (!v[b].is_zero()) {
                    c.pivot = static_cast<int>(b);
                    break;
                }
            out.push_back(std::move(c));
        };

        if (t == 2) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                ++words_;
                Vec v;
                for (const auto& F : frame) v.push_back(levi_tensor(S_, F, fields[i]).constant_term());
                record({static_cast<int>(i)}, false, v);
            }
            return out;
        }
        const long start = words_;
        std::vector<int> idx;
        std::function<void(const Series&)> extend = [&](const Series& g) {
            if (static_cast<int>(idx.size()) == len) {
                ++words_;
                Series g1 = g.truncated(1);
                for (bool imag : {false, true}) record(idx, imag, covector_at_base(S_, frame1, S_.re(g1, imag)));
                return;
            }
            const int cap = len - static_cast<int>(idx.size());
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (words_ - start >= opt_.word_budget) {
                    truncated_ = true;
                    return;
                }
                idx.push_back(static_cast<int>(i));
                extend(capped_apply(fields[i], g, cap));
                idx.pop_back();
            }
        };
        for (std::size_t i = 0; i < fields.size(); ++i)
            for (std::size_t j = 0; j < fields.size(); ++j) {
                idx = {static_cast<int>(i), static_cast<int>(j)};
                extend(S_.theta(capped_bracket(fields[j], fields[i], len)).truncated(len - 1));
            }
        return out;
    }

    const Hypersurface& S_;
    TowerOptions opt_;
    std::size_t n_;
    std::optional<Multitype> best_;
    long words_ = 0;
    int branches_ = 0;
    bool reduced_ = false;
    bool truncated_ = false;
};

}  // namespace

int minimal_form_order(const Hypersurface& S, const SubbundleFrame& E, int word_bound) {
    if (E.rank() == 0) return -1;
    auto letters = frame_letters(S, E, word_bound);
    auto frame1 = truncated_frame(E.frame, 1);
    for (const auto& A : letters)
        for (const auto& F : frame1)
            if (!levi_tensor(S, F, A.truncated(1)).constant_term().is_zero()) return 2;
    // Span of the functions L^l...L^3 theta([L^2, L^1]) by word length l.
    auto detects = [&](const Series& g) {
        Series g1 = g.truncated(1);
        return !is_zero(covector_at_base(S, frame1, g1)) || !is_zero(covector_at_base(S, frame1, S.conj(g1)));
    };
    std::vector<Series> level;
    std::map<Exponent, std::size_t, GradedLex> ids;
    auto flatten = [&](const Series& s, int deg) {
        SparseVec v;
        for (const auto& [e, c] : s.terms()) {
            if (total_degree(e) > deg) break;
            v[ids.emplace(e, ids.size()).first->second] = c;
        }
        return v;
    };
    {
        const int cap = word_bound - 2;
        EchelonBasis span;
        for (const auto& A : letters)
            for (const auto& B : letters) {
                Series g = S.theta(capped_bracket(B, A, cap + 1));
                if (!span.insert(flatten(g, cap))) continue;
                if (detects(g)) return 3;
                level.push_back(std::move(g));
            }
    }
    for (int l = 3; l < word_bound && !level.empty(); ++l) {
        const int cap = word_bound - l;
        EchelonBasis span;
        std::vector<Series> next;
        for (const auto& L : letters)
            for (const auto& g : level) {
                Series h = capped_apply(L, g, cap);
                if (!span.insert(flatten(h, cap))) continue;
                if (detects(h)) return l + 1;
                next.push_back(std::move(h));
            }
        level = std::move(next);
    }
    return -1;
}

Multitype tower_multitype(const Hypersurface& S, const TowerOptions& opt) {
    if (opt.word_bound < 2) throw std::invalid_argument("tower: word bound must be at least 2");
    // Values at the base point of words of length < W only see W-jets.
    return TowerSearch(S.with_order(opt.word_bound + 1), opt).run();
}

Multitype tower_multitype(const Hypersurface& S, int word_bound) {
    TowerOptions opt;
    opt.word_bound = word_bound;
    return tower_multitype(S, opt);
}

std::optional<Tower> replay_tower(const Hypersurface& S, const std::vector<StageChoice>& choices) {
    Tower T;
    T.stages.push_back(h10_bundle(S));
    for (const auto& c : choices) {
        auto a = advance(S, T.stages.back(), c);
        if (!a) return std::nullopt;
        T.choices.push_back(c);
        T.forms.push_back(a->form);
        if (c.order_t >= 3) T.associated.push_back(a->form.f);
        T.stages.push_back(a->next);
    }
    return T;
}

StructureReport structure_checks(const Series& r, const Hypersurface& S, const Multitype& m,
                                 const std::vector<Vec>& points, const std::vector<Multitype>* known) {
    if (known && known->size() != points.size()) throw std::invalid_argument("structure_checks: multitype count mismatch");
    StructureReport rep;
    const Tower& T = m.certificate;
    const std::size_t n = S.h10().size();
    {
        std::vector<Vec> diffs;
        for (const auto& w : T.forms)
            if (w.order_t >= 3) diffs.push_back(w.at_base());
        rep.differentials_independent = rank_of(diffs, n) == diffs.size();
        if (!rep.differentials_independent) rep.violations.push_back("associated differentials are dependent on H10 at the base point");
    }
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const Vec& p = points[idx];
        std::optional<Hypersurface> Sp;
        try {
            Sp = make_hypersurface(r, p, S.order(), S.pivot());
        } catch (const std::exception& e) {
            rep.notes.push_back("skipped " + point_str(p) + ": " + e.what());
            continue;
        }
        auto Tp = replay_tower(*Sp, T.choices);
        bool on_m = false;
        if (!Tp) {
            rep.notes.push_back("tower does not replay at " + point_str(p));
        } else {
            on_m = true;
            for (const auto& f : Tp->associated)
                if (!f.constant_term().is_zero()) on_m = false;
        }
        if (on_m) {
            ++rep.points_on_m;
            Matrix L = levi_matrix(*Sp);
            std::vector<Vec> rows;
            for (const auto& w : Tp->forms)
                if (w.order_t >= 3) rows.push_back(w.at_base());
            for (std::size_t b = 0; b < n; ++b) {
                Vec row(n);
                for (std::size_t a = 0; a < n; ++a) row[a] = L(a, b);
                rows.push_back(row);
            }
            auto K = Matrix::from_rows(rows, n).kernel();
            auto X = frame_values(*Sp, h10_bundle(*Sp));
            auto Em = frame_values(*Sp, Tp->stages.back());
            const std::size_t dim = Sp->n_plus_1();
            for (const auto& c : K) {
                Vec xi(dim);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t j = 0; j < dim; ++j) xi[j] += c[a] * X[a][j];
                if (!in_span(Em, xi, dim)) {
                    rep.violations.push_back("Levi kernel in H10M not contained in E_m at " + point_str(p));
                    break;
                }
            }
            ++rep.containment_checked;
        }
        TowerOptions opt;
        opt.word_bound = m.bound;
        Multitype mp = known ? (*known)[idx] : tower_multitype(*Sp, opt);
        ++rep.multitype_checked;
        if (lex_less(m.entries, mp.entries))
            rep.violations.push_back("multitype " + mp.str() + " at " + point_str(p) + " exceeds " + m.str());
        else if (!lex_less(mp.entries, m.entries) && Tp && !on_m)
            rep.violations.push_back("level set of " + m.str() + " leaves {f = 0} at " + point_str(p));
    }
    return rep;
}

}  // namespace crinv
