#include "doctest.h"
#include "helpers.hpp"

#include "crinv/orbit.hpp"

using namespace crinv;
using crinv::test::v;

TEST_CASE("orbit of a coordinate field") {
    auto c = VariableContext::real({"x", "y"});
    auto R = lie_orbit({VectorField::coordinate(c, 0)}, Field::real, {.cap = 6});
    CHECK(R.dim == 1);
    CHECK(R.closed);
    CHECK(R.orbit.pivots() == std::vector<int>{1});
    CHECK(R.orbit.phi()[0].is_zero());
}

TEST_CASE("brackets produce the missing direction") {
    auto c = VariableContext::real({"x", "y"});
    VectorField X2(c);
    X2[1] = v(c, "x") * v(c, "x");
    auto R = lie_orbit({VectorField::coordinate(c, 0), X2}, Field::real, {.cap = 6});
    CHECK(R.dim == 2);
    CHECK(R.orbit.codim() == 0);
}

TEST_CASE("curved orbit") {
    // d/dx + 2x d/dy has the parabola y = x^2 as orbit.
    auto c = VariableContext::real({"x", "y"});
    VectorField X = VectorField::coordinate(c, 0);
    X[1] = Gaussian(2) * v(c, "x");
    auto R = lie_orbit({X}, Field::real, {.cap = 6});
    REQUIRE(R.dim == 1);
    CHECK(R.orbit.phi()[0] == v(c, "x") * v(c, "x"));
    CHECK(is_tangent(X, R.orbit) == Tri::yes);
}

TEST_CASE("orbit of a tangent frame of w1 = |z|^4, w2 = |z|^6") {
    auto c = VariableContext::complexified({"z", "w1", "w2"});
    Series z = v(c, "z"), zb = v(c, "zb");
    VectorField L = VectorField::coordinate(c, c->index("z"));
    Series a = Gaussian(2) * z * zb * zb, b = Gaussian(3) * z * z * pow(zb, 3);
    L[c->index("w1")] = a;
    L[c->index("w1b")] = a;
    L[c->index("w2")] = b;
    L[c->index("w2b")] = b;
    auto R = lie_orbit({L}, Field::real, {.cap = 8});
    CHECK(R.dim == 2);
    CHECK(R.closed);
    Series expect_w1 = z * z * zb * zb;
    auto P = parametrize(R.orbit);
    for (const auto& g : R.orbit.generators()) CHECK(P.pullback(g).is_zero());
    CHECK(in_ideal(v(c, "w1") - expect_w1, R.orbit, 1) == Tri::yes);
    CHECK(in_ideal(v(c, "w2b") - pow(z * zb, 3), R.orbit, 1) == Tri::yes);
    CHECK(is_tangent(L, R.orbit) == Tri::yes);
    CHECK(is_tangent(L.conjugate(), R.orbit) == Tri::yes);
}

TEST_CASE("truncated generators give a lower bound flag") {
    auto c = VariableContext::real({"x", "y", "u"});
    // x-translation with a non-nilpotent partner: brackets never terminate exactly.
    VectorField X = VectorField::coordinate(c, 0);
    VectorField Y(c);
    Series ex(c, 6);
    for (int k = 0; k <= 6; ++k) ex.add_term({static_cast<std::uint16_t>(k), 0, 0}, Gaussian::frac(1, 1));
    Y[1] = ex;
    auto R = lie_orbit({X, Y}, Field::real, {.cap = 6, .depth_budget = 3});
    CHECK(R.dim == 2);
    CHECK(!R.closed);
    CHECK(R.note == "orbit dimension lower bound only");
    auto B = lie_orbit({X, Y}, Field::real, {.cap = 6, .depth_budget = 3, .dim_upper_bound = 2});
    CHECK(B.closed);
}

TEST_CASE("lie series") {
    auto c = VariableContext::real({"x", "t"});
    VectorField X(c);
    X[0] = v(c, "x");
    // exp(t x d/dx) x = x e^t
    Series s = lie_series(X, v(c, "x"), 1, 4);
    CHECK(s.coeff({1, 3}) == Gaussian::frac(1, 6));
    CHECK(s.order() == 4);
}
