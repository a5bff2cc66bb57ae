#include "doctest.h"
#include "helpers.hpp"

#include "crinv/series.hpp"

using namespace crinv;
using crinv::test::v;

TEST_CASE("gaussian arithmetic") {
    Gaussian a(mpq_class(1, 2), mpq_class(3));
    CHECK(a.conj().conj() == a);
    CHECK((a * a.inverse()).is_one());
    CHECK(a.str() == "1/2+3i");
    CHECK((-Gaussian::i()).str() == "-i");
    CHECK_THROWS(Gaussian().inverse());
}

TEST_CASE("ring operations") {
    auto c = VariableContext::real({"x"});
    Series x = v(c, "x");
    Series one = Series::constant(c, Gaussian(1));
    CHECK((one + x) * (one - x) == one - x * x);
    Series f = x * x + x;
    CHECK(f + Series::zero(c) == f);

    auto z = VariableContext::complexified({"z"});
    Series Z = v(z, "z"), B = v(z, "zb");
    Series s = pow(Z + B, 2) + pow(Z - B, 2);
    CHECK(s == Gaussian(2) * Z * Z + Gaussian(2) * B * B);
    CHECK_THROWS(x + Z);
}

TEST_CASE("reliable order bookkeeping") {
    auto c = VariableContext::real({"x", "y"});
    Series a = v(c, "x") + Series::constant(c, Gaussian(1));
    a.set_order(3);
    Series b = v(c, "y");
    b.set_order(5);
    CHECK((a + b).order() == 3);
    CHECK((a * b).order() <= 5);
    CHECK((a * b).order() >= 3);
    CHECK(a.derivative(0).order() == 2);
    a.add_term({4, 0}, Gaussian(7));
    CHECK(a.coeff({4, 0}).is_zero());
}

TEST_CASE("differentiate") {
    auto z = VariableContext::complexified({"z"});
    Series Z = v(z, "z"), B = v(z, "zb");
    CHECK((Z * Z * B).derivative(0) == Gaussian(2) * Z * B);
    CHECK(Series::constant(z, Gaussian(5)).derivative(0).is_zero());
    CHECK(pow(Z + B, 3).derivative(0) == Gaussian(3) * pow(Z + B, 2));
}

TEST_CASE("compose") {
    auto cx = VariableContext::real({"x"});
    auto ct = VariableContext::real({"t"});
    Series x = v(cx, "x"), t = v(ct, "t");
    CHECK(compose(x * x, {t + t * t}) == t * t + Gaussian(2) * pow(t, 3) + pow(t, 4));
    auto cxy = VariableContext::real({"x", "y"});
    Series f = v(cxy, "x") * v(cxy, "y");
    CHECK(compose(f, {t, t * t}) == pow(t, 3));
    CHECK(compose(f, {v(cxy, "x"), v(cxy, "y")}) == f);

    Series g = x;
    g.set_order(4);
    CHECK_THROWS(compose(g, {t + Series::constant(ct, Gaussian(1))}));
}

TEST_CASE("conjugate") {
    auto z = VariableContext::complexified({"z"});
    Series Z = v(z, "z"), B = v(z, "zb");
    CHECK((Gaussian::i() * Z).conjugate() == -Gaussian::i() * B);
    CHECK((Z * B).conjugate() == Z * B);
    CHECK((Z * B).is_real());
    CHECK(!Z.is_real());
}

TEST_CASE("graph_solve") {
    auto c = VariableContext::real({"x1", "x2"});
    Series x1 = v(c, "x1"), x2 = v(c, "x2");
    auto g = graph_solve({x2 - x1 * x1}, {1}, 10);
    CHECK(g[0] == x1 * x1);
    CHECK(g[0].exact());

    auto h = graph_solve({x2 + x2 * x1 - x1}, {1}, 6);
    Series expect(c, 6);
    for (int k = 1; k <= 6; ++k) expect.add_term({static_cast<std::uint16_t>(k), 0}, Gaussian(k % 2 ? 1 : -1));
    CHECK(h[0] == expect);

    CHECK_THROWS_WITH(graph_solve({x1 * x1}, {0}, 6), doctest::Contains("not a manifold ideal"));
}

TEST_CASE("lowest weighted component") {
    auto c = VariableContext::real({"x", "y"});
    Series x = v(c, "x"), y = v(c, "y");
    std::vector<mpq_class> w1{1, 1}, w2{1, 2};
    CHECK(lowest_weighted_component(x * x + pow(y, 3), w1, 2) == x * x);
    CHECK(lowest_weighted_component(x * x * y + pow(x, 5), w2, 4) == x * x * y);
    CHECK(lowest_weighted_component(x * y, w1, 2) == x * y);
    CHECK_THROWS(lowest_weighted_component(x + y * y, w1, 2));
}

TEST_CASE("recentre") {
    auto c1 = VariableContext::real({"x"});
    Series x = v(c1, "x");
    Series one = Series::constant(c1, Gaussian(1));
    CHECK(recentre(x * x, {Gaussian(1)}) == one + Gaussian(2) * x + x * x);
    CHECK(recentre(x * x, {Gaussian(0)}) == x * x);
    auto c = VariableContext::real({"x", "y"});
    Series X = v(c, "x"), Y = v(c, "y");
    Series expect = Series::constant(c, Gaussian(-1)) - X + Y + X * Y;
    CHECK(recentre(X * Y, {Gaussian(1), Gaussian(-1)}) == expect);
    Series t = X;
    t.set_order(3);
    CHECK_THROWS(recentre(t, {Gaussian(1), Gaussian(0)}));
}

TEST_CASE("canonical rendering") {
    auto z = VariableContext::complexified({"z"});
    Series Z = v(z, "z"), B = v(z, "zb");
    Series s = Gaussian(mpq_class(1, 2)) * Z * B - Gaussian::i() * Z + Series::constant(z, Gaussian(3));
    CHECK(s.str() == "3 - i*z + 1/2*z*zb");
    Series t = Z;
    t.set_order(2);
    CHECK(t.str() == "z + O(3)");
}

TEST_CASE("monomial enumeration") {
    auto m = monomials_between(2, 0, 2);
    REQUIRE(m.size() == 6);
    CHECK(m[1] == Exponent{1, 0});
    CHECK(m[3] == Exponent{2, 0});
    CHECK(monomials_between(3, 2, 2).size() == 6);
}
