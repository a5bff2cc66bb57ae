#include "crinv/orbit.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crinv {

namespace {

// Flattens fields truncated at a common degree into sparse coordinate vectors.
class FieldIndexer {
public:
    SparseVec flatten(const VectorField& X, int degree) {
        SparseVec v;
        for (std::size_t i = 0; i < X.size(); ++i)
            for (const auto& [e, c] : X[i].terms()) {
                if (total_degree(e) > degree) break;
                v[index(i, e)] = c;
            }
        return v;
    }

private:
    std::size_t index(std::size_t var, const Exponent& e) {
        auto key = std::make_pair(var, e);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        std::size_t id = ids_.size();
        ids_.emplace(std::move(key), id);
        return id;
    }
    std::map<std::pair<std::size_t, Exponent>, std::size_t> ids_;
};

class ClosureSpan {
public:
    explicit ClosureSpan(const std::vector<VectorField>* fields) : fields_(fields) {}

    // True when X is independent of the stored fields at the comparison degree.
    bool is_new(const VectorField& X) {
        int t = std::min(X.order(), min_order_);
        if (t != degree_) rebuild(t);
        return !basis_.contains(indexer_.flatten(X, degree_));
    }
    void add(const VectorField& X) {
        min_order_ = std::min(min_order_, X.order());
        if (min_order_ != degree_) rebuild(min_order_);
        else basis_.insert(indexer_.flatten(X, degree_));
    }

private:
    void rebuild(int t) {
        degree_ = t;
        basis_ = EchelonBasis{};
        for (const auto& Y : *fields_) basis_.insert(indexer_.flatten(Y, degree_));
    }
    const std::vector<VectorField>* fields_;
    FieldIndexer indexer_;
    EchelonBasis basis_;
    int min_order_ = kExact;
    int degree_ = kExact;
};

VectorField capped_bracket(const VectorField& X, const VectorField& Y, int cap) {
    if (X.order() >= kExact && Y.order() >= kExact) {
        VectorField B = bracket(X, Y);
        int deg = -1;
        for (std::size_t i = 0; i < B.size(); ++i) deg = std::max(deg, B[i].degree());
        if (deg <= cap) return B;
        return B.truncated(cap);
    }
    return bracket(X, Y, cap);
}

CtxPtr time_extended(const CtxPtr& ambient, int d) {
    std::vector<std::string> names = ambient->names();
    if (!ambient->has_conjugation()) {
        for (int k = 0; k < d; ++k) names.push_back("t" + std::to_string(k + 1));
        return VariableContext::holomorphic(names);
    }
    std::vector<int> pairing;
    std::vector<VariableContext::Kind> kinds;
    for (std::size_t i = 0; i < ambient->size(); ++i) {
        pairing.push_back(ambient->pair(i));
        kinds.push_back(ambient->kind(i));
    }
    for (int k = 0; k < d; ++k) {
        names.push_back("t" + std::to_string(k + 1));
        pairing.push_back(static_cast<int>(pairing.size()));
        kinds.push_back(VariableContext::Kind::real);
    }
    return VariableContext::make(names, pairing, kinds);
}

Series lie_series_capped(const VectorField& V, const Series& f, std::size_t time_var, int cap) {
    const CtxPtr& ctx = f.ctx();
    Series t = Series::var(ctx, time_var);
    Series out = f;
    Series term = f;
    for (int j = 1;; ++j) {
        Series Vt = V.apply(term, cap);
        term = Series::mul_capped(t, Vt, cap) * Gaussian::frac(1, j);
        if (term.is_zero()) {
            out.set_order(std::min(out.order(), term.order()));
            break;
        }
        out += term;
        if (j > cap + 1) throw std::logic_error("lie_series: truncated terms did not vanish");
    }
    return out;
}

}  // namespace

Series lie_series(const VectorField& V, const Series& f, std::size_t time_var, int cap) {
    if (V.order() >= kExact && f.exact()) {
        // Exact attempt: accept when the series terminates within cap + 1 steps.
        const CtxPtr& ctx = f.ctx();
        Series t = Series::var(ctx, time_var);
        Series out = f;
        Series term = f;
        for (int j = 1; j <= cap + 1 || cap >= kExact; ++j) {
            term = t * V.apply(term) * Gaussian::frac(1, j);
            if (term.is_zero()) return out;
            out += term;
            if (cap >= kExact && j > 64) throw std::domain_error("lie_series: flow does not terminate");
        }
    }
    if (cap >= kExact) throw std::domain_error("lie_series: flow does not terminate");
    return lie_series_capped(V, f.truncated(cap), time_var, cap);
}

FormalSubmanifold implicitize(const Parametrization& A, CtxPtr ambient, Field field, int cap) {
    const std::size_t m = ambient->size();
    const int d = A.source_dim;
    if (A.components.size() != m) throw std::invalid_argument("implicitize: component count mismatch");
    if (d == 0) {
        std::vector<int> piv;
        std::vector<Series> phi;
        for (std::size_t i = 0; i < m; ++i) {
            piv.push_back(static_cast<int>(i));
            phi.push_back(Series::zero(ambient));
        }
        return FormalSubmanifold(ambient, piv, phi, field);
    }
    Matrix D(d, m);
    for (int k = 0; k < d; ++k)
        for (std::size_t i = 0; i < m; ++i) {
            Exponent e(A.params->size(), 0);
            e[k] = 1;
            D(k, i) = A.components[i].coeff(e);
        }
    auto free_cols = D.rref();
    if (static_cast<int>(free_cols.size()) != d) throw std::domain_error("implicitize: parametrization is not immersive");
    std::vector<bool> is_free(m, false);
    for (auto c : free_cols) is_free[c] = true;
    std::vector<int> pivots;
    for (std::size_t i = 0; i < m; ++i)
        if (!is_free[i]) pivots.push_back(static_cast<int>(i));
    if (pivots.empty()) return ambient_space(ambient, field);

    // Work context (y_1..y_d, t_1..t_d); solve A_free(t) = y for t.
    std::vector<std::string> names;
    for (int k = 0; k < d; ++k) names.push_back("y" + std::to_string(k + 1));
    for (int k = 0; k < d; ++k) names.push_back("t" + std::to_string(k + 1));
    CtxPtr W = VariableContext::holomorphic(names);
    std::vector<int> tmap(A.params->size(), -1);
    for (int k = 0; k < d; ++k) tmap[k] = d + k;
    std::vector<Series> F;
    std::vector<int> tvars;
    for (int k = 0; k < d; ++k) {
        F.push_back(embed(A.components[free_cols[k]], W, tmap) - Series::var(W, k));
        tvars.push_back(d + k);
    }
    auto psi = graph_solve(F, tvars, cap);
    std::vector<Series> tsub(A.params->size(), Series::zero(W));
    for (int k = 0; k < d; ++k) tsub[k] = psi[k];
    std::vector<Series> to_ambient(2 * d, Series::zero(ambient));
    for (int k = 0; k < d; ++k) to_ambient[k] = Series::var(ambient, free_cols[k]);
    std::vector<Series> phi;
    for (int p : pivots) {
        Series g = compose(A.components[p], tsub, cap);
        phi.push_back(compose(g, to_ambient, cap));
    }
    return FormalSubmanifold(ambient, pivots, phi, field);
}

OrbitResult lie_orbit(const std::vector<VectorField>& generators, Field field, const OrbitOptions& opt) {
    if (generators.empty()) throw std::invalid_argument("lie_orbit: no generators");
    const CtxPtr& ctx = generators[0].ctx();
    const std::size_t m = ctx->size();
    const int cap = opt.cap;
    const int depth_budget = opt.depth_budget < 0 ? cap : opt.depth_budget;
    const int bound = opt.dim_upper_bound < 0 ? static_cast<int>(m) : std::min<int>(opt.dim_upper_bound, m);

    std::vector<VectorField> gens;
    for (const auto& g : generators) {
        if (!same_context(g.ctx(), ctx)) throw std::invalid_argument("lie_orbit: generators in different contexts");
        gens.push_back(g.order() >= kExact ? g : g.truncated(std::min(g.order(), cap)));
        if (field == Field::real) gens.push_back(gens.back().conjugate());
    }

    OrbitResult R;
    ClosureSpan span(&R.algebra);
    std::vector<Vec> values;
    auto consider = [&](const VectorField& X) {
        if (X.order() < 0 || X.is_zero()) return false;
        if (!span.is_new(X)) return false;
        R.algebra.push_back(X);
        span.add(X);
        Vec v = X.value_at_zero();
        auto trial = values;
        trial.push_back(v);
        if (rank_of(trial, m) > values.size()) {
            values.push_back(v);
            R.basis.push_back(X);
        }
        return true;
    };

    std::vector<VectorField> level;
    for (const auto& g : gens)
        if (consider(g)) level.push_back(g);
    bool exact_all = std::all_of(gens.begin(), gens.end(), [](const VectorField& g) { return g.order() >= kExact; });
    int depth = 1;
    bool stabilized = level.empty();
    while (!level.empty() && static_cast<int>(values.size()) < bound) {
        if (depth >= depth_budget || static_cast<int>(R.algebra.size()) >= opt.max_fields) break;
        std::vector<VectorField> next;
        for (const auto& g : gens)
            for (const auto& X : level) {
                if (static_cast<int>(R.algebra.size()) >= opt.max_fields) break;
                VectorField B = capped_bracket(g, X, cap);
                exact_all = exact_all && B.order() >= kExact;
                if (consider(B)) next.push_back(B);
            }
        ++depth;
        level = std::move(next);
        if (level.empty()) stabilized = true;
    }
    R.depth_used = depth;
    R.dim = static_cast<int>(values.size());
    R.closed = R.dim >= bound || (stabilized && exact_all);
    if (!R.closed) R.note = "orbit dimension lower bound only";

    // Flow parametrization through composed Lie series.
    const int d = R.dim;
    CtxPtr ext = time_extended(ctx, d);
    std::vector<int> id_map(m);
    for (std::size_t i = 0; i < m; ++i) id_map[i] = static_cast<int>(i);
    std::vector<VectorField> flows;
    for (int k = 0; k < d; ++k) {
        std::vector<Series> c;
        for (std::size_t i = 0; i < m; ++i) c.push_back(embed(R.basis[k][i], ext, id_map));
        for (int j = 0; j < d; ++j) c.push_back(Series::zero(ext));
        flows.emplace_back(ext, c);
    }
    std::vector<std::string> pnames;
    for (int k = 0; k < d; ++k) pnames.push_back("t" + std::to_string(k + 1));
    if (pnames.empty()) pnames.push_back("t0");
    R.flow.params = VariableContext::holomorphic(pnames);
    R.flow.source_dim = d;
    R.flow.split = d;
    std::vector<Series> eval(ext->size(), Series::zero(R.flow.params));
    for (int k = 0; k < d; ++k) eval[m + k] = Series::var(R.flow.params, k);
    for (std::size_t i = 0; i < m; ++i) {
        Series F = Series::var(ext, i);
        for (int k = d - 1; k >= 0; --k) F = lie_series(flows[k], F, m + k, cap);
        R.flow.components.push_back(F.is_zero() && F.exact() ? Series::zero(R.flow.params) : compose(F, eval, cap));
    }
    R.orbit = implicitize(R.flow, ctx, field, cap);
    return R;
}

}  // namespace crinv
