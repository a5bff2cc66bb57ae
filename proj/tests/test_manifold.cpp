#include "doctest.h"
#include "helpers.hpp"

#include "crinv/manifold.hpp"

using namespace crinv;
using crinv::test::v;

TEST_CASE("make_submanifold") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto O = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    CHECK(O.dim() == 1);
    CHECK(O.codim() == 1);
    CHECK(O.pivots() == std::vector<int>{1});
    auto P = make_submanifold({x1, x2}, Field::real, 8);
    CHECK(P.dim() == 0);
    CHECK_THROWS_WITH(make_submanifold({x1 * x1}, Field::real, 8), doctest::Contains("not a manifold ideal"));
}

TEST_CASE("parametrize") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto O = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    auto A = parametrize(O);
    Series t = Series::var(A.params, 0);
    CHECK(A.components[0] == t);
    CHECK(A.components[1] == t * t);
    for (const auto& g : O.generators()) CHECK(A.pullback(g).is_zero());

    auto id = parametrize(ambient_space(c, Field::real));
    CHECK(id.components[0] == Series::var(id.params, 0));
    CHECK(id.components[1] == Series::var(id.params, 1));

    auto z = VariableContext::complexified({"z", "w"});
    auto axis = make_submanifold({v(z, "w"), v(z, "wb"), v(z, "z") - v(z, "zb")}, Field::real, 8);
    auto B = parametrize(axis);
    Series s = Series::var(B.params, 0);
    CHECK(B.components[0] == s);
    CHECK(B.components[1] == s);
    CHECK(B.components[2].is_zero());
    CHECK(B.components[3].is_zero());
}

TEST_CASE("joint_parametrize") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto Y = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    auto X = make_submanifold({x1, x2}, Field::real, 8);
    auto A = joint_parametrize(X, Y, 8);
    CHECK(A.split == 0);
    Series u = Series::var(A.params, 0);
    CHECK(A.components[0] == u);
    CHECK(A.components[1] == u * u);

    auto B = joint_parametrize(Y, Y, 8);
    CHECK(B.split == 1);
    CHECK(B.source_dim == 1);

    // Real axis inside the complex line {w = 0}.
    auto z = VariableContext::complexified({"z", "w"});
    auto line = make_submanifold({v(z, "w"), v(z, "wb")}, Field::real, 8);
    auto axis = make_submanifold({v(z, "w"), v(z, "wb"), v(z, "z") - v(z, "zb")}, Field::real, 8);
    auto J = joint_parametrize(axis, line, 8);
    CHECK(J.split == 1);
    CHECK(J.source_dim == 2);
    // A(t', 0) annihilates I(axis).
    std::vector<Series> restrict(J.params->size(), Series::zero(J.params));
    restrict[0] = Series::var(J.params, 0);
    for (const auto& g : axis.generators()) CHECK(compose(J.pullback(g), restrict).is_zero());
    for (const auto& g : line.generators()) CHECK(J.pullback(g).is_zero());

    CHECK_THROWS(joint_parametrize(line, axis, 8));
}

TEST_CASE("ideal membership") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto O = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    CHECK(in_ideal(pow(x2 - x1 * x1, 3), O, 3) == Tri::yes);
    CHECK(in_ideal(pow(x2 - x1 * x1, 3), O, 4) == Tri::no);
    CHECK(in_ideal(x1, O, 1) == Tri::no);

    auto z = VariableContext::complexified({"z", "w"});
    auto line = make_submanifold({v(z, "w"), v(z, "wb")}, Field::real, 8);
    Series f = v(z, "w") + v(z, "z") * v(z, "wb");
    CHECK(in_ideal(f, line, 1) == Tri::yes);
    CHECK(in_ideal(f, line, 2) == Tri::no);

    // A truncated f whose pullback vanishes to its order is only undecidable beyond it.
    Series g = pow(x2 - x1 * x1, 3);
    g.set_order(2);
    CHECK(in_ideal(g, O, 2) == Tri::yes);
    CHECK(in_ideal(g, O, 3) == Tri::undecidable);
}

TEST_CASE("tangent modules") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto O = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    auto B = tangent_module_basis(O);
    REQUIRE(B.size() == 1);
    CHECK(B[0][0] == Series::constant(c, Gaussian(1)));
    CHECK(B[0][1] == Gaussian(2) * x1);
    CHECK(is_tangent(B[0], O) == Tri::yes);
    CHECK(is_tangent(VectorField::coordinate(c, 1), O) == Tri::no);
    VectorField L(c);
    L[1] = x1 * (x2 - x1 * x1);
    CHECK(is_tangent(L, O) == Tri::yes);

    auto amb = tangent_module_basis(ambient_space(c, Field::real));
    CHECK(amb.size() == 2);

    auto z = VariableContext::complexified({"z", "w"});
    auto axis = make_submanifold({v(z, "w"), v(z, "wb"), v(z, "z") - v(z, "zb")}, Field::real, 8);
    auto T = tangent_module_basis(axis);
    REQUIRE(T.size() == 1);
    CHECK(T[0][0] == Series::constant(z, Gaussian(1)));
    CHECK(T[0][1] == Series::constant(z, Gaussian(1)));
    CHECK(tangent_space(axis).size() == 1);
    CHECK(tangent_space(make_submanifold({x1, x2}, Field::real, 4)).empty());
}

TEST_CASE("approximate_in_larger") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto O = make_submanifold({x1, x2}, Field::real, 8);
    auto V = make_submanifold({x2}, Field::real, 8);
    VectorField L(c);
    L[1] = x2;
    auto Lt = approximate_in_larger(L, O, V);
    CHECK(is_tangent(Lt, O) == Tri::yes);
    CHECK(is_tangent(Lt, V) == Tri::yes);
    for (std::size_t i = 0; i < 2; ++i) CHECK(in_ideal(Lt[i] - L[i], O, 1) == Tri::yes);

    auto Y = make_submanifold({x2 - x1 * x1}, Field::real, 8);
    auto B = tangent_module_basis(Y)[0];
    auto same = approximate_in_larger(B, Y, Y);
    CHECK(is_tangent(same, Y) == Tri::yes);
}

TEST_CASE("submanifold rendering") {
    auto c = VariableContext::real({"x1", "x2"});
    auto O = make_submanifold({v(c, "x2") - v(c, "x1") * v(c, "x1")}, Field::real, 8);
    CHECK(O.str() == "ambient(x1,x2) real dim=1 codim=1 {x2 - x1^2}");
}
