#include "crinv/corpus.hpp"

#include "crinv/cr.hpp"
#include "crinv/relative.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace crinv {

using nlohmann::json;

namespace {

Provenance parse_provenance(const std::string& s) {
    if (s == "paper") return Provenance::paper;
    if (s == "derived") return Provenance::derived;
    if (s == "trivial") return Provenance::trivial;
    throw std::invalid_argument("unknown provenance tag '" + s + "'");
}

std::string canonical(const json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + canonical(v[i]);
        return s + ")";
    }
    throw std::invalid_argument("unsupported expectation value " + v.dump());
}

std::vector<Expectation> parse_expect(const json& j, const std::string& where) {
    std::vector<Expectation> out;
    if (j.is_null()) return out;
    if (!j.is_object()) throw std::invalid_argument(where + ": expect must be an object");
    for (const auto& [key, val] : j.items()) {
        if (!val.is_object() || !val.contains("value") || !val.contains("source"))
            throw std::invalid_argument(where + ": expectation '" + key + "' lacks a provenance tag");
        Expectation e;
        e.key = key;
        e.value = canonical(val.at("value"));
        e.source = parse_provenance(val.at("source").get<std::string>());
        out.push_back(e);
    }
    return out;
}

std::vector<std::string> strings(const json& j) {
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(x.get<std::string>());
    return out;
}

std::vector<std::string> list_items(const std::string& canonical_list) {
    std::string s = canonical_list;
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    return split_list(s);
}

std::string compact(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

std::string bounded_text(const Bounded& b) { return b.str(); }

std::string tri_text(bool b) { return b ? "true" : "false"; }

Check make_check(const std::string& entry, const std::string& where, const Expectation& e) {
    Check c;
    c.entry = entry;
    c.where = where;
    c.invariant = e.key;
    c.expected = e.value;
    c.source = to_string(e.source);
    return c;
}

std::string letter_text(const Letter& l) {
    std::string s;
    int terms = 0;
    for (std::size_t j = 0; j < l.coeffs.size(); ++j) {
        const Gaussian& c = l.coeffs[j];
        if (c.is_zero()) continue;
        std::string x = "X" + std::to_string(j + 1);
        std::string cs = c == Gaussian(1) ? "" : c == Gaussian(-1) ? "-" : "(" + c.str() + ")*";
        s += (terms++ && cs.rfind('-', 0) != 0 ? "+" : "") + cs + x;
    }
    if (terms > 1) s = "(" + s + ")";
    return l.conjugated ? "conj" + (terms > 1 ? s : "(" + s + ")") : s;
}

struct PointCache {
    const Hypersurface* S;
    Bounds b;
    std::optional<Multitype> m;
    const Multitype& multitype() {
        if (!m) {
            TowerOptions opt;
            opt.word_bound = b.word_bound;
            m = tower_multitype(*S, opt);
        }
        return *m;
    }
};

bool ideal_matches(const FormalSubmanifold& V, const std::vector<std::string>& gens, std::string* detail) {
    for (const auto& g : gens)
        if (in_ideal(parse_series(g, V.ctx()), V, 1) != Tri::yes) {
            *detail = g + " not in the computed ideal";
            return false;
        }
    if (static_cast<std::size_t>(V.codim()) != gens.size()) {
        *detail = "codimension " + std::to_string(V.codim());
        return false;
    }
    return true;
}

std::string ideal_text(const FormalSubmanifold& V) {
    std::string s = "(";
    auto g = V.generators();
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].str();
    return s + ")";
}

Verdict simple(const std::string& expected, const std::string& computed) {
    return expected == computed ? Verdict::match : Verdict::mismatch;
}

void run_types(const std::string& id, const std::string& where, const Hypersurface& S, const SubbundleFrame& E,
               const std::vector<Expectation>& expect, const Bounds& b, PointCache* cache, RunReport& rep) {
    std::optional<ComplexOrbit> orbit;
    std::optional<HuangYin> hy;
    auto complex_orbit = [&]() -> const ComplexOrbit& {
        if (!orbit) orbit = complex_formal_orbit(S, E, std::min(b.order, 5));
        return *orbit;
    };
    auto huang = [&]() -> const HuangYin& {
        if (!hy) hy = huang_yin_check(S, E);
        return *hy;
    };
    for (const auto& e : expect) {
        Check c = make_check(id, where, e);
        if (e.key == "multitype" && cache) {
            const Multitype& m = cache->multitype();
            c.computed = compact(m.str());
            c.verdict = compare_multitype(e.value, m);
            auto lines = certificate_lines(m);
            for (std::size_t i = 0; i < lines.size(); ++i) c.detail += (i ? "; " : "") + lines[i];
        } else if (e.key == "levi_type" || e.key == "commutator_type") {
            Bounded t = e.key == "levi_type" ? levi_type(S, E, b.word_bound) : commutator_type(S, E, b.word_bound);
            c.computed = bounded_text(t);
            c.verdict = compare_bounded(e.value, t);
        } else if (e.key == "contact_type") {
            Bounded t = contact_type(S, E, b.order);
            c.computed = bounded_text(t);
            c.verdict = compare_bounded(e.value, t);
        } else if (e.key == "complex_orbit") {
            const auto& O = complex_orbit();
            if (!O.manifold) {
                c.computed = "not a manifold ideal at order " + std::to_string(O.jet_order);
                c.verdict = Verdict::mismatch;
            } else {
                c.computed = ideal_text(*O.manifold);
                c.verdict = ideal_matches(*O.manifold, list_items(e.value), &c.detail) ? Verdict::match : Verdict::mismatch;
            }
        } else if (e.key == "complex_orbit_codim") {
            const auto& O = complex_orbit();
            c.computed = O.manifold ? std::to_string(O.manifold->codim()) : "none";
            c.verdict = simple(e.value, c.computed);
        } else if (e.key == "real_orbit_dim") {
            c.computed = std::to_string(real_formal_orbit(S, E).dim());
            c.verdict = simple(e.value, c.computed);
        } else if (e.key == "huang_yin") {
            c.computed = tri_text(huang().holds);
            c.verdict = simple(e.value, c.computed);
        } else if (e.key == "complexification") {
            const auto& H = huang();
            if (!H.complexification || !H.complexification->ok || !H.complexification->V) {
                c.computed = "none";
                c.verdict = Verdict::mismatch;
            } else {
                const auto& V = *H.complexification->V;
                c.computed = ideal_text(V);
                c.verdict = ideal_matches(V, list_items(e.value), &c.detail) ? Verdict::match : Verdict::mismatch;
            }
        } else {
            c.computed = "unknown invariant";
            c.verdict = Verdict::mismatch;
        }
        rep.checks.push_back(std::move(c));
    }
}

FormalSubmanifold submanifold_of(const std::vector<std::string>& gens, const CtxPtr& ctx, int order) {
    std::vector<Series> raw;
    for (const auto& g : gens) raw.push_back(parse_series(g, ctx));
    if (raw.empty()) return ambient_space(ctx, Field::real);
    return make_submanifold(raw, Field::real, order);
}

void run_pair(const std::string& id, const std::string& where, const Series& r, const PairSpec& p, const Bounds& b,
              RunReport& rep) {
    auto ctx = r.ctx();
    auto P = make_relative_pair(r, submanifold_of(p.O, ctx, b.order), submanifold_of(p.V, ctx, b.order), b.order,
                                p.pseudoconvex);
    for (const auto& e : p.expect) {
        Check c = make_check(id, where, e);
        if (e.key == "relative_contact_order") {
            auto k = relative_contact_order(P);
            c.computed = k.precondition ? bounded_text(k.k) : k.violation;
            c.verdict = k.precondition ? compare_bounded(e.value, k.k) : Verdict::mismatch;
        } else if (e.key == "parity_checks") {
            auto D = d10_space(P, 1);
            auto R = hessian_parity_checks(P, D);
            c.computed = R.skipped ? "skipped" : tri_text(R.ok());
            c.detail = R.skipped ? R.skip_reason : std::to_string(R.hessians_checked) + " hessians checked";
            for (const auto& v : R.violations) c.detail += "; " + v;
            c.verdict = simple(e.value, c.computed);
        } else if (e.key == "lie_closed") {
            auto B = complex_supertangent_space(P, 2);
            auto cl = bracket_closure(P, B);
            c.computed = cl.verdict == Tri::yes ? "true" : cl.verdict == Tri::no ? "false" : "undecidable";
            c.detail = std::to_string(B.size()) + " basis fields, " + std::to_string(cl.pairs) + " brackets";
            c.verdict = simple(e.value, c.computed);
        } else {
            c.computed = "unknown invariant";
            c.verdict = Verdict::mismatch;
        }
        rep.checks.push_back(std::move(c));
    }
}

void run_scan(const std::string& id, const Series& r, const ScanSpec& s, const Bounds& b, RunReport& rep) {
    std::vector<Gaussian> grid;
    for (const auto& g : s.grid) grid.push_back(parse_constant(g));
    auto S = scan_stratification(r, grid, s.q, b);
    for (const auto& e : s.expect) {
        Check c = make_check(id, "scan", e);
        if (e.key == "strata") {
            std::string got = "(";
            for (std::size_t i = 0; i < S.strata.size(); ++i) got += (i ? ", " : "") + compact(S.strata[i]);
            got += ")";
            c.computed = got;
            auto want = list_items(e.value);
            for (auto& w : want) w = compact(w);
            auto have = list_items(got);
            std::sort(want.begin(), want.end());
            std::sort(have.begin(), have.end());
            c.verdict = want == have ? Verdict::match : Verdict::mismatch;
        } else if (e.key == "audit_violations") {
            c.computed = S.audited ? std::to_string(S.audit.violations.size()) : "not audited";
            for (const auto& v : S.audit.violations) c.detail += v + "; ";
            c.detail += std::to_string(S.audit.multitype_checked) + " points compared, " +
                        std::to_string(S.audit.containment_checked) + " containments checked";
            c.verdict = simple(e.value, c.computed);
        } else {
            c.computed = "unknown invariant";
            c.verdict = Verdict::mismatch;
        }
        rep.checks.push_back(std::move(c));
    }
}

}  // namespace

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "paper";
        case Provenance::derived: return "derived";
        case Provenance::trivial: return "trivial";
    }
    return "";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::match: return "match";
        case Verdict::mismatch: return "mismatch";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::computed: return "computed";
    }
    return "";
}

bool RunReport::ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::mismatch; });
}

Corpus load_corpus_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("corpus: ") + e.what());
    }
    Corpus c;
    c.schema = j.value("schema", "");
    if (c.schema != kCorpusSchema) throw std::invalid_argument("corpus: unsupported schema '" + c.schema + "'");
    std::set<std::string> ids;
    for (const auto& je : j.at("entries")) {
        CorpusEntry e;
        e.id = je.at("id").get<std::string>();
        if (!ids.insert(e.id).second) throw std::invalid_argument("corpus: duplicate id " + e.id);
        e.r = je.at("r").get<std::string>();
        e.dimension = je.value("dimension", 0);
        if (je.contains("bounds")) {
            e.order = je["bounds"].value("order", e.order);
            e.word_bound = je["bounds"].value("word_bound", e.word_bound);
        }
        for (const auto& jp : je.value("points", json::array())) {
            PointSpec p;
            p.coords = strings(jp.at("at"));
            p.expect = parse_expect(jp.value("expect", json()), e.id);
            e.points.push_back(p);
        }
        for (const auto& js : je.value("subbundles", json::array())) {
            SubbundleSpec s;
            for (const auto& row : js.at("kernel_of")) {
                Vec v;
                for (const auto& x : row) v.push_back(parse_constant(x.is_string() ? x.get<std::string>() : x.dump()));
                s.covectors.push_back(v);
            }
            s.expect = parse_expect(js.value("expect", json()), e.id);
            e.subbundles.push_back(s);
        }
        for (const auto& jp : je.value("pairs", json::array())) {
            PairSpec p;
            p.O = strings(jp.at("O"));
            p.V = strings(jp.at("V"));
            p.pseudoconvex = jp.value("pseudoconvex", false);
            p.expect = parse_expect(jp.value("expect", json()), e.id);
            e.pairs.push_back(p);
        }
        if (je.contains("scan")) {
            ScanSpec s;
            s.grid = strings(je["scan"].at("grid"));
            s.q = je["scan"].value("q", 1);
            s.expect = parse_expect(je["scan"].value("expect", json()), e.id);
            e.scan = s;
        }
        c.entries.push_back(std::move(e));
    }
    return c;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("corpus: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_corpus_text(ss.str());
}

Verdict compare_bounded(const std::string& expected, const Bounded& computed) {
    if (expected == "inf") return computed.at_least ? Verdict::match : Verdict::mismatch;
    int want = std::stoi(expected);
    if (!computed.at_least) return want == computed.value ? Verdict::match : Verdict::mismatch;
    return want >= computed.value ? Verdict::inconclusive : Verdict::mismatch;
}

Verdict compare_multitype(const std::string& expected, const Multitype& computed) {
    auto items = list_items(expected);
    if (items.size() != computed.entries.size()) return Verdict::mismatch;
    Verdict v = Verdict::match;
    for (std::size_t i = 0; i < items.size(); ++i) {
        Verdict w = compare_bounded(items[i], computed.entries[i]);
        if (w == Verdict::mismatch) return w;
        if (w == Verdict::inconclusive) v = w;
    }
    return v;
}

std::string point_str(const Vec& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
    return s + ")";
}

Vec resolve_point(const Series& r, const std::vector<std::string>& coords) {
    auto holo = r.ctx()->holomorphic_indices();
    const std::size_t n = holo.size();
    if (coords.size() != n && coords.size() != n - 1)
        throw std::invalid_argument("point: expected " + std::to_string(n) + " coordinates");
    Vec p(n);
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].empty()) p[k] = parse_constant(coords[k]);
    if (coords.size() == n && !coords[n - 1].empty()) return p;
    auto q = point_on(r, p, static_cast<int>(n) - 1);
    if (!q) throw std::invalid_argument("point: cannot solve for w on S");
    return *q;
}

Vec parse_point_flag(const std::string& text, const Series& r) {
    const CtxPtr& ambient = r.ctx();
    auto holo = ambient->holomorphic_indices();
    std::vector<std::string> coords(holo.size());
    for (const auto& item : split_list(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("point: expected name=value in '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
        auto it = std::find_if(holo.begin(), holo.end(), [&](int i) { return ambient->name(i) == name; });
        if (it == holo.end()) throw std::invalid_argument("point: unknown coordinate '" + name + "'");
        coords[static_cast<std::size_t>(it - holo.begin())] = item.substr(eq + 1);
    }
    for (std::size_t k = 0; k + 1 < coords.size(); ++k)
        if (coords[k].empty()) coords[k] = "0";
    return resolve_point(r, coords);
}

std::vector<std::string> certificate_lines(const Multitype& m) {
    std::vector<std::string> out;
    const auto& T = m.certificate;
    for (std::size_t k = 0; k < T.choices.size(); ++k) {
        const auto& c = T.choices[k];
        std::string s = "t" + std::to_string(k + 1) + "=" + std::to_string(c.order_t) + " word=[";
        for (std::size_t i = 0; i < c.word.size(); ++i) s += (i ? ", " : "") + letter_text(c.word[i]);
        s += "]";
        if (c.order_t >= 3) s += c.imaginary ? " Im" : " Re";
        s += " form=" + point_str(c.kernel);
        out.push_back(s);
    }
    return out;
}

RunReport run_entry(const CorpusEntry& e, const std::optional<Bounds>& override_bounds) {
    RunReport rep;
    Bounds b{e.order, e.word_bound};
    if (override_bounds) b = *override_bounds;
    DefiningExpression d = parse_defining_function(e.r, e.dimension);
    for (const auto& n : d.notes) rep.notes.push_back(e.id + ": " + n);
    const Series& r = d.series;
    for (const auto& p : e.points) {
        Vec pt = resolve_point(r, p.coords);
        std::string where = "point " + point_str(pt);
        Hypersurface S = make_hypersurface(r, pt, b.order);
        PointCache cache{&S, b, std::nullopt};
        run_types(e.id, where, S, h10_bundle(S), p.expect, b, &cache, rep);
    }
    if (!e.subbundles.empty()) {
        Hypersurface S = make_hypersurface(r, Vec(static_cast<std::size_t>(d.dimension)), b.order);
        for (std::size_t k = 0; k < e.subbundles.size(); ++k) {
            const auto& sb = e.subbundles[k];
            auto E = subbundle_from_covectors(S, sb.covectors);
            run_types(e.id, "subbundle " + std::to_string(k + 1), S, E, sb.expect, b, nullptr, rep);
        }
    }
    for (std::size_t k = 0; k < e.pairs.size(); ++k) run_pair(e.id, "pair " + std::to_string(k + 1), r, e.pairs[k], b, rep);
    if (e.scan) run_scan(e.id, r, *e.scan, b, rep);
    return rep;
}

RunReport run_corpus(const Corpus& c, const std::optional<Bounds>& override_bounds) {
    RunReport all;
    for (const auto& e : c.entries) {
        RunReport r;
        try {
            r = run_entry(e, override_bounds);
        } catch (const std::exception& ex) {
            Check f;
            f.entry = e.id;
            f.invariant = "entry";
            f.computed = std::string("error: ") + ex.what();
            f.verdict = Verdict::mismatch;
            r.checks.push_back(f);
        }
        for (auto& ch : r.checks) ch.bounds = override_bounds ? *override_bounds : Bounds{e.order, e.word_bound};
        all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
        all.notes.insert(all.notes.end(), r.notes.begin(), r.notes.end());
    }
    return all;
}

ScanReport scan_stratification(const Series& r, const std::vector<Gaussian>& grid, int q, const Bounds& b,
                               unsigned threads) {
    ScanReport rep;
    rep.q = q;
    const std::size_t n = r.ctx()->holomorphic_indices().size();
    const std::size_t nz = n - 1;
    std::vector<Vec> partial;
    {
        std::vector<std::size_t> idx(nz, 0);
        for (;;) {
            Vec p(n);
            for (std::size_t k = 0; k < nz; ++k) p[k] = grid[idx[k]];
            partial.push_back(p);
            std::size_t k = nz;
            while (k > 0 && ++idx[k - 1] == grid.size()) idx[--k] = 0;
            if (k == 0 || grid.empty()) break;
        }
    }
    const std::size_t P = grid.empty() ? 0 : partial.size();
    rep.points.resize(P);
    std::vector<std::optional<Multitype>> mts(P);
    std::vector<std::optional<Hypersurface>> surfaces(P);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < P;) {
            auto& sp = rep.points[i];
            try {
                auto p = point_on(r, partial[i], static_cast<int>(n) - 1);
                if (!p) throw std::domain_error("no point of S over this grid point");
                sp.point = *p;
                surfaces[i] = make_hypersurface(r, *p, b.order, static_cast<int>(r.ctx()->holomorphic_indices().back()));
                TowerOptions opt;
                opt.word_bound = b.word_bound;
                mts[i] = tower_multitype(*surfaces[i], opt);
                sp.multitype = mts[i]->str();
                sp.q_finite = q_finite(*mts[i], q);
            } catch (const std::exception& e) {
                sp.point = partial[i];
                sp.error = e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(P, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::map<std::string, int> ids;
    for (auto& sp : rep.points) {
        if (!sp.error.empty()) continue;
        auto [it, fresh] = ids.try_emplace(sp.multitype, static_cast<int>(rep.strata.size()));
        if (fresh) rep.strata.push_back(sp.multitype);
        sp.stratum = it->second;
    }

    std::size_t base = P;
    for (std::size_t i = 0; i < P; ++i)
        if (rep.points[i].error.empty() && is_zero(rep.points[i].point)) base = i;
    if (base == P)
        for (std::size_t i = 0; i < P && base == P; ++i)
            if (rep.points[i].error.empty()) base = i;
    if (base < P) {
        std::vector<Vec> others;
        std::vector<Multitype> known;
        for (std::size_t i = 0; i < P; ++i)
            if (i != base && rep.points[i].error.empty()) {
                others.push_back(rep.points[i].point);
                known.push_back(*mts[i]);
            }
        rep.audit = structure_checks(r, *surfaces[base], *mts[base], others, &known);
        rep.audited = true;
    }
    return rep;
}

}  // namespace crinv
