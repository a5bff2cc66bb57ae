#include "crinv/corpus.hpp"
#include "crinv/cr.hpp"
#include "crinv/relative.hpp"
#include "crinv/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

using namespace crinv;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Options {
    std::string r;
    int dimension = 0;
    int order = 10;
    int word_bound = 6;
    std::string point;
    int q = 1;
    std::string format = "table";
    std::string corpus;
    std::string kernel;
    std::string ideal;
    std::string O, V;
    bool pseudoconvex = false;
    std::string grid = "0,1,-1";
    std::vector<std::string> expect;
    unsigned threads = 0;
};

class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Setup {
    DefiningExpression d;
    Vec point;
    Hypersurface S;
};

Setup setup(const Options& o) {
    DefiningExpression d;
    try {
        d = parse_defining_function(o.r, o.dimension);
    } catch (const std::exception& e) {
        throw UsageError(std::string("defining function: ") + e.what());
    }
    Vec p = o.point.empty() ? Vec(static_cast<std::size_t>(d.dimension)) : parse_point_flag(o.point, d.series);
    Hypersurface S = make_hypersurface(d.series, p, o.order);
    return {std::move(d), p, std::move(S)};
}

VerbReport start(const std::string& verb, const Options& o, const Setup& s) {
    VerbReport r;
    r.verb = verb;
    r.inputs = {{"r", s.d.series.str()},
                {"point", point_str(s.point)},
                {"order", std::to_string(o.order)},
                {"word_bound", std::to_string(o.word_bound)}};
    r.notes = s.d.notes;
    return r;
}

SubbundleFrame subbundle(const Options& o, const Hypersurface& S) {
    if (o.kernel.empty()) return h10_bundle(S);
    std::vector<Vec> cov;
    for (const auto& row : split_list(o.kernel, ';')) {
        Vec c;
        for (const auto& x : split_list(row)) c.push_back(parse_constant(x));
        if (c.size() != S.n_plus_1()) throw UsageError("--kernel rows need " + std::to_string(S.n_plus_1()) + " entries");
        cov.push_back(c);
    }
    return subbundle_from_covectors(S, cov);
}

std::string ideal_text(const std::vector<Series>& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].str();
    return s + ")";
}

std::vector<Series> generators(const std::string& list, const CtxPtr& ctx) {
    std::vector<Series> out;
    for (const auto& g : split_list(list)) out.push_back(parse_series(g, ctx));
    return out;
}

// --expect key=value; compares against the row of that key.
void apply_expectations(VerbReport& r, const std::vector<std::string>& expect) {
    for (const auto& e : expect) {
        auto eq = e.find('=');
        if (eq == std::string::npos) throw UsageError("--expect needs key=value");
        std::string key = e.substr(0, eq), want = e.substr(eq + 1);
        auto it = std::find_if(r.rows.begin(), r.rows.end(), [&](const Row& x) { return x.key == key; });
        if (it == r.rows.end()) throw UsageError("--expect: no result named " + key);
        auto strip = [](std::string s) {
            s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
            return s;
        };
        bool ok = strip(it->value) == strip(want);
        r.rows.push_back({"expect " + key, ok ? "match" : "mismatch", "expected " + want});
        r.ok = r.ok && ok;
    }
}

int run_multitype(const Options& o, Format f) {
    Setup s = setup(o);
    VerbReport r = start("multitype", o, s);
    TowerOptions opt;
    opt.word_bound = o.word_bound;
    Multitype m = tower_multitype(s.S, opt);
    r.rows.push_back({"multitype", m.str(), ""});
    auto lines = certificate_lines(m);
    for (std::size_t i = 0; i < lines.size(); ++i) r.rows.push_back({"stage " + std::to_string(i + 1), lines[i], ""});
    r.rows.push_back({"q_finite", q_finite(m, o.q) ? "true" : "false", "q=" + std::to_string(o.q)});
    r.rows.push_back({"words_examined", std::to_string(m.words_examined), m.truncated_search ? "budget exhausted" : ""});
    apply_expectations(r, o.expect);
    emit(std::cout, r, f);
    return r.ok ? kPass : kMismatch;
}

int run_types(const Options& o, Format f) {
    Setup s = setup(o);
    VerbReport r = start("types", o, s);
    auto E = subbundle(o, s.S);
    r.rows.push_back({"rank", std::to_string(E.rank()), ""});
    r.rows.push_back({"levi_type", levi_type(s.S, E, o.word_bound).str(), ""});
    r.rows.push_back({"commutator_type", commutator_type(s.S, E, o.word_bound).str(), ""});
    r.rows.push_back({"contact_type", contact_type(s.S, E, o.order).str(), ""});
    apply_expectations(r, o.expect);
    emit(std::cout, r, f);
    return r.ok ? kPass : kMismatch;
}

int run_orbit(const Options& o, Format f) {
    Setup s = setup(o);
    VerbReport r = start("orbit", o, s);
    auto E = subbundle(o, s.S);
    auto C = complex_formal_orbit(s.S, E, std::min(o.order, 5));
    r.rows.push_back({"complex_orbit", C.manifold ? ideal_text(C.manifold->generators()) : "not a manifold ideal",
                      "jet order " + std::to_string(C.jet_order) + ", words to length " + std::to_string(C.word_length)});
    auto H = huang_yin_check(s.S, E);
    r.rows.push_back({"real_orbit_dim", std::to_string(H.orbit.dim()), H.orbit.result.closed ? "" : "closure not stabilized"});
    r.rows.push_back({"real_orbit", ideal_text(H.orbit.manifold().generators()), ""});
    r.rows.push_back({"cr", H.cr.cr ? "true" : "false", H.cr.certificate});
    r.rows.push_back({"huang_yin", H.holds ? "true" : "false", ""});
    if (H.complexification && H.complexification->V)
        r.rows.push_back({"complexification", ideal_text(H.complexification->V->generators()), ""});
    apply_expectations(r, o.expect);
    emit(std::cout, r, f);
    return r.ok ? kPass : kMismatch;
}

int run_contact_order(const Options& o, Format f) {
    if (o.ideal.empty()) throw UsageError("contact-order needs --ideal");
    Setup s = setup(o);
    VerbReport r = start("contact-order", o, s);
    auto h = holomorphic_part(s.S.ctx());
    auto I = generators(o.ideal, h);
    r.inputs.push_back({"ideal", ideal_text(I)});
    r.rows.push_back({"contact_order", contact_order(s.S, I, o.order).str(), ""});
    apply_expectations(r, o.expect);
    emit(std::cout, r, f);
    return r.ok ? kPass : kMismatch;
}

int run_relative(const Options& o, Format f) {
    if (o.O.empty() || o.V.empty()) throw UsageError("relative-contact-order needs --O and --V");
    Setup s = setup(o);
    VerbReport r = start("relative-contact-order", o, s);
    auto ctx = s.d.series.ctx();
    auto O = make_submanifold(generators(o.O, ctx), Field::real, o.order);
    auto V = make_submanifold(generators(o.V, ctx), Field::real, o.order);
    auto P = make_relative_pair(s.d.series, O, V, o.order, o.pseudoconvex);
    r.inputs.push_back({"O", ideal_text(O.generators())});
    r.inputs.push_back({"V", ideal_text(V.generators())});
    auto k = relative_contact_order(P);
    r.rows.push_back({"relative_contact_order", k.precondition ? k.k.str() : "precondition failed", k.violation});
    auto a = pair_assumptions(P);
    r.rows.push_back({"generic", a.generic ? "true" : "false", ""});
    r.rows.push_back({"contained", a.contained ? "true" : "false", ""});
    r.rows.push_back({"complex_tangent", a.complex_tangent ? "true" : "false", ""});
    apply_expectations(r, o.expect);
    emit(std::cout, r, f);
    return r.ok ? kPass : kMismatch;
}

int run_scan(const Options& o, Format f) {
    DefiningExpression d;
    try {
        d = parse_defining_function(o.r, o.dimension);
    } catch (const std::exception& e) {
        throw UsageError(std::string("defining function: ") + e.what());
    }
    std::vector<Gaussian> grid;
    for (const auto& g : split_list(o.grid)) grid.push_back(parse_constant(g));
    ScanReport rep = scan_stratification(d.series, grid, o.q, Bounds{o.order, o.word_bound}, o.threads);
    emit(std::cout, rep, f);
    return rep.audit.violations.empty() ? kPass : kMismatch;
}

int run_check_corpus(const Options& o, Format f) {
    if (o.corpus.empty()) throw UsageError("check-corpus needs --corpus");
    Corpus c;
    try {
        c = load_corpus(o.corpus);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    RunReport rep = run_corpus(c);
    emit(std::cout, rep, f);
    return rep.ok() ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of real hypersurfaces and pairs of formal submanifolds"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool needs_r) {
        auto* r = sub->add_option("r", o.r, "defining function, e.g. \"-2*Re(w) + abs2(z1*z2)\"");
        if (needs_r) r->required();
        sub->add_option("--dimension", o.dimension, "ambient complex dimension (default: inferred)");
        sub->add_option("--order", o.order, "jet order N")->check(CLI::Range(1, 64));
        sub->add_option("--word-bound", o.word_bound, "word bound W")->check(CLI::Range(1, 32));
        sub->add_option("--q", o.q, "q for q-finiteness")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "json, table or csv")->check(CLI::IsMember({"json", "table", "csv"}));
        sub->add_option("--expect", o.expect, "key=value checked against the result");
    };

    auto* mt = app.add_subcommand("multitype", "tower multitype at a point");
    common(mt, true);
    mt->add_option("--point", o.point, "z1=...,z2=...,w=... (w solved on S when omitted)");

    auto* ty = app.add_subcommand("types", "Levi, commutator and contact types of a subbundle");
    common(ty, true);
    ty->add_option("--point", o.point, "base point");
    ty->add_option("--kernel", o.kernel, "covectors cutting E out of H10, rows separated by ';'");

    auto* ob = app.add_subcommand("orbit", "complex and real formal orbits of a subbundle");
    common(ob, true);
    ob->add_option("--point", o.point, "base point");
    ob->add_option("--kernel", o.kernel, "covectors cutting E out of H10, rows separated by ';'");

    auto* co = app.add_subcommand("contact-order", "contact order of S with a complex submanifold");
    common(co, true);
    co->add_option("--point", o.point, "base point");
    co->add_option("--ideal", o.ideal, "holomorphic generators, comma separated");

    auto* rc = app.add_subcommand("relative-contact-order", "contact order of a pair O in V");
    common(rc, true);
    rc->add_option("--O", o.O, "generators of I(O) in z, zb coordinates");
    rc->add_option("--V", o.V, "generators of I(V) in z, zb coordinates");
    rc->add_flag("--pseudoconvex", o.pseudoconvex, "certify pseudoconvexity of the defining function");

    auto* sc = app.add_subcommand("scan", "multitype strata over a grid of points");
    common(sc, true);
    sc->add_option("--grid", o.grid, "values for each z coordinate, comma separated");
    sc->add_option("--threads", o.threads, "worker threads (default: all cores)");

    auto* cc = app.add_subcommand("check-corpus", "run every entry of a corpus file");
    common(cc, false);
    cc->add_option("--corpus", o.corpus, "corpus file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        Format f = parse_format(o.format);
        if (*mt) return run_multitype(o, f);
        if (*ty) return run_types(o, f);
        if (*ob) return run_orbit(o, f);
        if (*co) return run_contact_order(o, f);
        if (*rc) return run_relative(o, f);
        if (*sc) return run_scan(o, f);
        if (*cc) return run_check_corpus(o, f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMismatch;
    }
    return kUsage;
}
