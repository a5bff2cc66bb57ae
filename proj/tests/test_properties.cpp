#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"

#include "crinv/corpus.hpp"
#include "crinv/orbit.hpp"
#include "crinv/relative.hpp"

using namespace crinv;
using crinv::test::random_gaussian;
using crinv::test::random_series;
using crinv::test::v;

namespace {

constexpr int kCases = 100;

Series real_part(const Series& f) { return (f + f.conjugate()) * Gaussian::frac(1, 2); }

// -w - wb + a real polynomial in z, zb without constant or linear part.
Series random_rigid(std::mt19937& rng, const CtxPtr& c, int deg) {
    auto zc = VariableContext::complexified({"z"});
    Series p = real_part(random_series(rng, zc, deg, 4, kExact, true));
    Series q = Series::zero(c);
    for (const auto& [e, x] : p.terms()) {
        if (e[0] + e[1] < 2) continue;
        Exponent f(c->size(), 0);
        f[c->index("z")] = e[0];
        f[c->index("zb")] = e[1];
        q.add_term(f, x);
    }
    return -v(c, "w") - v(c, "wb") + q;
}

VectorField random_field(std::mt19937& rng, const CtxPtr& c, int deg, int terms) {
    VectorField X(c);
    for (std::size_t i = 0; i < c->size(); ++i) X[i] = random_series(rng, c, deg, terms);
    return X;
}

bool same_entries(const Multitype& a, const Multitype& b) { return a.entries == b.entries; }

}  // namespace

TEST_CASE("ring laws on random series") {
    std::mt19937 rng(1);
    auto c = VariableContext::complexified({"z", "w"});
    for (int k = 0; k < kCases; ++k) {
        Series a = random_series(rng, c, 3, 4), b = random_series(rng, c, 3, 4), d = random_series(rng, c, 2, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
        CHECK((a - a).is_zero());
        CHECK(a * Series::constant(c, Gaussian(1)) == a);
    }
}

TEST_CASE("Leibniz rule and Jacobi identity") {
    std::mt19937 rng(2);
    auto c = VariableContext::real({"x", "y", "u"});
    for (int k = 0; k < kCases; ++k) {
        auto X = random_field(rng, c, 2, 2), Y = random_field(rng, c, 2, 2), Z = random_field(rng, c, 1, 2);
        Series f = random_series(rng, c, 3, 3), g = random_series(rng, c, 3, 3);
        CHECK(X.apply(f * g) == X.apply(f) * g + f * X.apply(g));
        CHECK(bracket(X, Y).apply(f) == X.apply(Y.apply(f)) - Y.apply(X.apply(f)));
        auto J = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y));
        CHECK(J.is_zero());
    }
}

TEST_CASE("conjugation laws") {
    std::mt19937 rng(3);
    auto c = VariableContext::complexified({"z1", "z2"});
    for (int k = 0; k < kCases; ++k) {
        Series a = random_series(rng, c, 3, 4), b = random_series(rng, c, 3, 4);
        auto X = random_field(rng, c, 2, 2);
        CHECK(a.conjugate().conjugate() == a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
        CHECK(X.apply(a).conjugate() == X.conjugate().apply(a.conjugate()));
        CHECK((a + a.conjugate()).is_real());
    }
}

TEST_CASE("parametrizations annihilate the ideal") {
    std::mt19937 rng(4);
    auto c = VariableContext::real({"x1", "x2", "x3", "x4"});
    std::uniform_int_distribution<int> codim(1, 3);
    for (int k = 0; k < kCases; ++k) {
        int m = codim(rng);
        std::vector<Series> raw;
        for (int j = 0; j < m; ++j) {
            Series g = v(c, "x" + std::to_string(4 - j));
            Series extra = random_series(rng, c, 3, 3);
            for (const auto& [e, x] : extra.terms()) {
                int deg = 0;
                for (int d : e) deg += d;
                if (deg >= 2) g.add_term(e, x);
            }
            raw.push_back(g);
        }
        auto O = make_submanifold(raw, Field::real, 6);
        REQUIRE(O.codim() == m);
        auto P = parametrize(O);
        for (const auto& g : O.generators()) CHECK(P.pullback(g, 6).truncated(6).is_zero());
        Series h = random_series(rng, c, 2, 3) * raw[0];
        CHECK(P.pullback(h, 6).truncated(6).is_zero());
    }
}

TEST_CASE("orbit dimension equals the dimension of the generated algebra at 0") {
    std::mt19937 rng(5);
    auto c = VariableContext::real({"x1", "x2", "x3", "x4"});
    std::uniform_int_distribution<int> coin(0, 1), power(1, 3);
    for (int k = 0; k < kCases; ++k) {
        // d/dx1 plus x1^p d/dx_j for a random subset of j; brackets recover each d/dx_j.
        std::vector<VectorField> gens{VectorField::coordinate(c, 0)};
        std::vector<int> reached{0};
        for (int j = 1; j < 4; ++j) {
            if (!coin(rng)) continue;
            VectorField X(c);
            X[j] = pow(v(c, "x1"), power(rng));
            gens.push_back(X);
            reached.push_back(j);
        }
        auto R = lie_orbit(gens, Field::real, {.cap = 6});
        std::vector<Vec> values;
        for (const auto& X : R.algebra) values.push_back(X.value_at_zero());
        CHECK(R.dim == static_cast<int>(rank_of(values, 4)));

        // Brute force: iterated brackets with d/dx1 up to depth 4.
        std::vector<Vec> brute;
        for (const auto& G : gens) {
            VectorField X = G;
            for (int d = 0; d <= 4; ++d) {
                brute.push_back(X.value_at_zero());
                X = bracket(gens[0], X);
            }
        }
        CHECK(R.dim == static_cast<int>(rank_of(brute, 4)));
        CHECK(R.dim == static_cast<int>(reached.size()));
    }
}

TEST_CASE("orbits are minimal among invariant coordinate subspaces") {
    std::mt19937 rng(6);
    auto c = VariableContext::real({"x1", "x2", "x3", "x4"});
    std::uniform_int_distribution<int> mask_dist(1, 15);
    for (int k = 0; k < kCases; ++k) {
        int mask = mask_dist(rng);
        std::vector<int> inside;
        for (int j = 0; j < 4; ++j)
            if (mask >> j & 1) inside.push_back(j);
        // Fields supported in the coordinate subspace of `inside`, with coefficients
        // depending on those coordinates only.
        auto sub = [&](int deg, int terms) {
            Series s = random_series(rng, c, deg, terms);
            Series out = Series::zero(c);
            for (const auto& [e, x] : s.terms()) {
                bool ok = true;
                for (int j = 0; j < 4; ++j)
                    if (e[j] && !(mask >> j & 1)) ok = false;
                if (ok) out.add_term(e, x);
            }
            return out;
        };
        std::vector<VectorField> gens;
        for (int a : inside) {
            VectorField X = VectorField::coordinate(c, a);
            for (int b : inside) {
                Series s = sub(2, 2);
                X[b] += s - Series::constant(c, s.constant_term());
            }
            gens.push_back(X);
        }
        auto R = lie_orbit(gens, Field::real, {.cap = 3});

        // Brute force over all coordinate subspaces {x_j = 0, j not in T}.
        int best = 4;
        for (int T = 0; T < 16; ++T) {
            bool invariant = true;
            for (const auto& X : gens)
                for (int j = 0; j < 4; ++j) {
                    if (T >> j & 1) continue;
                    if (!X.value_at_zero()[j].is_zero()) invariant = false;
                    for (const auto& [e, x] : X[j].terms()) {
                        bool in_ideal_of_T = false;
                        for (int i = 0; i < 4; ++i)
                            if (!(T >> i & 1) && e[i] > 0) in_ideal_of_T = true;
                        if (!in_ideal_of_T) invariant = false;
                    }
                }
            if (invariant) best = std::min(best, std::popcount(static_cast<unsigned>(T)));
        }
        CHECK(R.dim == best);
        CHECK(R.dim == static_cast<int>(inside.size()));
        for (const auto& X : gens) CHECK(is_tangent(X, R.orbit) == Tri::yes);
    }
}

TEST_CASE("types and multitype are independent of the contact form multiplier") {
    std::mt19937 rng(7);
    auto c = VariableContext::complexified({"z", "w"});
    int finite = 0;
    for (int k = 0; k < kCases; ++k) {
        Series r = random_rigid(rng, c, 4);
        auto S = make_hypersurface(r, Vec(2), 6);
        Series h = Series::constant(c, Gaussian(1 + static_cast<int>(rng() % 3))) +
                   real_part(random_series(rng, c, 2, 3, kExact, true));
        auto Sh = S.with_multiplier(h);
        auto E = h10_bundle(S), Eh = h10_bundle(Sh);
        CHECK(levi_type(S, E, 4) == levi_type(Sh, Eh, 4));
        CHECK(commutator_type(S, E, 4) == commutator_type(Sh, Eh, 4));
        auto m = tower_multitype(S, 4), mh = tower_multitype(Sh, 4);
        CHECK(same_entries(m, mh));
        finite += m.entries[0].is_finite();
    }
    CHECK(finite > 0);
}

TEST_CASE("map approximation lands on the zero set") {
    std::mt19937 rng(8);
    auto c = VariableContext::real({"x1", "x2", "x3"});
    auto t = VariableContext::real({"t1", "t2"});
    for (int k = 0; k < kCases; ++k) {
        Series R = v(c, "x" + std::to_string(1 + static_cast<int>(rng() % 3)));
        R += random_series(rng, c, 3, 3, kExact, true).truncated(3) - random_series(rng, c, 1, 3, kExact, true).truncated(1);
        Series extra = random_series(rng, c, 3, 3);
        for (const auto& [e, x] : extra.terms()) {
            int deg = e[0] + e[1] + e[2];
            if (deg >= 2) R.add_term(e, x.re());
        }
        bool has_linear = false;
        for (int i = 0; i < 3; ++i) has_linear = has_linear || !R.derivative(i).constant_term().is_zero();
        if (!has_linear) R += v(c, "x1");
        std::vector<Series> A;
        for (int i = 0; i < 3; ++i) A.push_back(random_series(rng, t, 3, 3, kExact, true));
        auto M = approximate_map(R, A, 6);
        CHECK(M.on_zero_set);
        CHECK(M.congruent);
        Series RA = compose(R, M.components, 6).truncated(6);
        CHECK(RA.is_zero());
    }
}

TEST_CASE("field approximation annihilates the defining function") {
    std::mt19937 rng(9);
    auto c = VariableContext::complexified({"z", "w"});
    for (int k = 0; k < kCases; ++k) {
        Series R = random_rigid(rng, c, 4);
        VectorField L(c);
        for (int i : c->holomorphic_indices()) L[i] = random_series(rng, c, 2, 3);
        if (L.value_at_zero()[c->index("z")].is_zero()) L[c->index("z")] += Series::constant(c, Gaussian(1));
        auto F = approximate_field(R, L, 6);
        CHECK(F.annihilates);
        CHECK(F.congruent);
        CHECK(F.field.is_type_10());
        CHECK(capped_apply(F.field, R, 6).truncated(5).is_zero());
    }
}

TEST_CASE("testing vanishing jets by derivatives along V") {
    std::mt19937 rng(10);
    auto c = VariableContext::complexified({"z", "w"});
    Series z = v(c, "z"), zb = v(c, "zb"), w = v(c, "w"), wb = v(c, "wb");
    auto O = make_submanifold({w, wb, z - zb}, Field::real, 8);
    auto V = make_submanifold({w, wb}, Field::real, 8);
    auto P = make_relative_pair(-w - wb + Gaussian::frac(-1, 4) * pow(z - zb, 2), O, V, 8, true);
    std::uniform_int_distribution<int> mdist(1, 4);
    int with_hypothesis = 0, without = 0;
    for (int k = 0; k < kCases; ++k) {
        int m = mdist(rng);
        Series G = random_series(rng, c, 2, 3);
        if (G.constant_term().is_zero()) G += Series::constant(c, Gaussian(1));
        Series F = pow(z - zb, m) * G + w * random_series(rng, c, 2, 2) + wb * random_series(rng, c, 2, 2);
        int k2 = std::uniform_int_distribution<int>(1, m)(rng);
        int k1 = std::uniform_int_distribution<int>(1, k2)(rng);
        auto T = jet_testing(P, F, k1, k2);
        CHECK(T.held());
        (T.hypothesis ? with_hypothesis : without) += 1;
    }
    CHECK(with_hypothesis > 0);
    CHECK(without > 0);
}

TEST_CASE("relative jets form a ring homomorphism") {
    std::mt19937 rng(11);
    auto c = VariableContext::complexified({"z", "w"});
    Series z = v(c, "z"), zb = v(c, "zb"), w = v(c, "w"), wb = v(c, "wb");
    auto O = make_submanifold({w, wb, z - zb}, Field::real, 8);
    auto V = make_submanifold({w, wb}, Field::real, 8);
    auto P = make_relative_pair(-w - wb, O, V, 8);
    for (int k = 0; k < kCases; ++k) {
        Series F = random_series(rng, c, 3, 4), G = random_series(rng, c, 3, 4);
        int j = 1 + static_cast<int>(rng() % 3);
        auto jF = relative_jet(F, P, j), jG = relative_jet(G, P, j);
        CHECK(relative_jet(F * G, P, j) == jet_product(jF, jG));
        auto sum = relative_jet(F + G, P, j);
        CHECK(sum.representative == jF.representative + jG.representative);
        // Adding elements of I(O)^(j+1) + I(V) leaves the jet unchanged.
        Series noise = pow(z - zb, j + 1) * random_series(rng, c, 1, 2) + w * random_series(rng, c, 2, 2);
        CHECK(relative_jet(F + noise, P, j) == jF);
    }
}

TEST_CASE("brute-force types of |z|^(2k)") {
    for (int k = 1; k <= 3; ++k) {
        oracle::Model M(k);
        int limit = 2 * k;
        CHECK(oracle::commutator_type(M, limit) == 2 * k);
        CHECK(oracle::levi_type(M, limit) == 2 * k);
        CHECK(oracle::first_multitype_entry(M, limit) == 2 * k);
        CHECK(oracle::contact_type(M, limit) == 2 * k);

        auto c = VariableContext::complexified({"z", "w"});
        Series r = -v(c, "w") - v(c, "wb") + pow(v(c, "z") * v(c, "zb"), k);
        auto S = make_hypersurface(r, Vec(2), 2 * k + 2);
        auto E = h10_bundle(S);
        CHECK(commutator_type(S, E, limit) == Bounded::finite(oracle::commutator_type(M, limit)));
        CHECK(levi_type(S, E, limit) == Bounded::finite(oracle::levi_type(M, limit)));
        CHECK(contact_type(S, E, limit + 1) == Bounded::finite(oracle::contact_type(M, limit)));
        auto m = tower_multitype(S, limit);
        REQUIRE(m.entries.size() == 1);
        CHECK(m.entries[0] == Bounded::finite(oracle::first_multitype_entry(M, limit)));
    }
}

TEST_CASE("scan audits on the (4,4) example grid") {
    auto d = parse_defining_function("-2*Re(w) + abs2(z1*z2)");
    std::vector<Gaussian> grid;
    for (int a = -5; a <= 5; ++a) grid.push_back(Gaussian::frac(a, 2));
    auto rep = scan_stratification(d.series, grid, 1, Bounds{8, 4});
    REQUIRE(rep.audited);
    CHECK(rep.points.size() == 121);
    CHECK(rep.audit.multitype_checked >= kCases);
    CHECK(rep.audit.violations.empty());
    for (const auto& p : rep.points) CHECK(p.error.empty());
    CHECK(rep.strata.size() == 2);

    // Points on both imaginary axes lie on M, where the containment applies.
    std::vector<Gaussian> imag;
    for (int a = -5; a <= 5; ++a) imag.push_back(Gaussian(0, a));
    auto on_m = scan_stratification(d.series, imag, 1, Bounds{8, 4});
    CHECK(on_m.audit.violations.empty());
    CHECK(on_m.audit.containment_checked >= 5);
}
