#include "doctest.h"
#include "helpers.hpp"

#include "crinv/parser.hpp"

using namespace crinv;
using crinv::test::v;

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr random_ast(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 2 : 8);
    static const char* vars[] = {"z1", "z2", "w"};
    static const char* funcs[] = {"Re", "Im", "conj", "abs2"};
    Expr e;
    switch (kind(rng)) {
        case 0: {
            e.kind = Expr::Kind::number;
            std::uniform_int_distribution<int> num(0, 9), den(1, 4);
            e.value = mpq_class(num(rng), den(rng));
            e.value.canonicalize();
            break;
        }
        case 1: e.kind = Expr::Kind::imaginary_unit; break;
        case 2:
            e.kind = Expr::Kind::variable;
            e.name = vars[std::uniform_int_distribution<int>(0, 2)(rng)];
            break;
        case 3:
            e.kind = Expr::Kind::neg;
            e.args = {random_ast(rng, depth - 1)};
            break;
        case 4:
        case 5:
        case 6: {
            static const Expr::Kind ops[] = {Expr::Kind::add, Expr::Kind::sub, Expr::Kind::mul};
            e.kind = ops[std::uniform_int_distribution<int>(0, 2)(rng)];
            e.args = {random_ast(rng, depth - 1), random_ast(rng, depth - 1)};
            break;
        }
        case 7:
            e.kind = Expr::Kind::pow;
            e.exponent = std::uniform_int_distribution<int>(0, 3)(rng);
            e.args = {random_ast(rng, depth - 1)};
            break;
        default:
            e.kind = Expr::Kind::call;
            e.name = funcs[std::uniform_int_distribution<int>(0, 3)(rng)];
            e.args = {random_ast(rng, depth - 1)};
    }
    return node(std::move(e));
}

}  // namespace

TEST_CASE("parse and elaborate the (4,4) example") {
    auto d = parse_defining_function("-2*Re(w) + abs2(z1*z2)");
    CHECK(d.dimension == 3);
    auto c = d.series.ctx();
    Series expect = -v(c, "w") - v(c, "wb") + v(c, "z1") * v(c, "z1b") * v(c, "z2") * v(c, "z2b");
    CHECK(d.series == expect);
    CHECK(d.notes.empty());
}

TEST_CASE("flat terms elaborate to zero with a note") {
    auto d = parse_defining_function("-2*Re(w) + abs2(z1*z2) + flat(exp(-1/abs2(z1)))");
    REQUIRE(d.notes.size() == 1);
    CHECK(d.notes[0].find("exp(-1/abs2(z1))") != std::string::npos);
    CHECK(d.series == parse_defining_function("-2*Re(w) + abs2(z1*z2)").series);
}

TEST_CASE("Re, Im and abs2") {
    auto d = parse_defining_function("-2*Re(w) + Im(z1)^2");
    auto c = d.series.ctx();
    Series y = (v(c, "z1") - v(c, "z1b")) * Gaussian::frac(1, 2) * -Gaussian::i();
    CHECK(d.series == -v(c, "w") - v(c, "wb") + y * y);
    CHECK(parse_defining_function("abs2(z1) - 2*Re(w)", 2).series == parse_defining_function("-2*Re(w) + abs2(z1)").series);
    CHECK(parse_defining_function("-2*Re(w)", 4).dimension == 4);
}

TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(parse_defining_function("z1"), "defining expression is not real", std::invalid_argument);
    CHECK_THROWS_AS(parse_defining_function("Re(q)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_defining_function("Re(w"), ParseError);
    CHECK_THROWS_AS(parse_defining_function("Re(w) +"), ParseError);
    CHECK_THROWS_AS(parse_defining_function("1/0"), ParseError);
    try {
        parse_expression("z1 + * w");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_defining_function("Re(z1b)"), std::invalid_argument);
}

TEST_CASE("constants and lists") {
    CHECK(parse_constant("1/2") == Gaussian::frac(1, 2));
    CHECK(parse_constant("1 + 2*i") == Gaussian(1, 2));
    CHECK(parse_constant("-3*i") == Gaussian(0, -3));
    CHECK_THROWS(parse_constant("z1"));
    auto parts = split_list("w, conj(w), z1 - conj(z1)");
    REQUIRE(parts.size() == 3);
    CHECK(parts[2] == "z1 - conj(z1)");
    CHECK(split_list(" ").empty());
}

TEST_CASE("parse(print(ast)) is the identity on random ASTs") {
    std::mt19937 rng(2024);
    for (int k = 0; k < 300; ++k) {
        ExprPtr a = random_ast(rng, 4);
        std::string text = print(*a);
        ExprPtr b = parse_expression(text);
        CHECK_MESSAGE(same_ast(*a, *b), text);
    }
}

TEST_CASE("accepted expressions are real") {
    std::mt19937 rng(77);
    int accepted = 0;
    for (int k = 0; k < 300; ++k) {
        ExprPtr a = random_ast(rng, 3);
        Expr re;
        re.kind = Expr::Kind::call;
        re.name = "Re";
        re.args = {a};
        std::string text = print(re);
        auto d = parse_defining_function(text, 3);
        CHECK(d.series.conjugate() == d.series);
        ++accepted;
        try {
            auto raw = parse_defining_function(print(*a), 3);
            CHECK(raw.series.conjugate() == raw.series);
        } catch (const std::invalid_argument&) {
        }
    }
    CHECK(accepted == 300);
}
