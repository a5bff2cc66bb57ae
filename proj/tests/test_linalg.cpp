#include "doctest.h"

#include "crinv/linalg.hpp"

using namespace crinv;

namespace {
Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}
}  // namespace

TEST_CASE("rank, kernel and inverse") {
    Matrix A = Matrix::from_rows({vec({1, 2, 3}), vec({2, 4, 6}), vec({1, 0, 1})}, 3);
    CHECK(A.rank() == 2);
    auto K = A.kernel();
    REQUIRE(K.size() == 1);
    CHECK(is_zero(A * K[0]));
    CHECK(A.det().is_zero());
    CHECK(!A.inverse());

    Matrix B = Matrix::from_rows({vec({2, 1}), vec({1, 1})}, 2);
    auto Bi = B.inverse();
    REQUIRE(Bi);
    Matrix I = B * *Bi;
    CHECK(I(0, 0).is_one());
    CHECK(I(0, 1).is_zero());
    CHECK(B.det() == Gaussian(1));
    auto x = B.solve(vec({3, 2}));
    REQUIRE(x);
    CHECK((*x)[0] == Gaussian(1));
    CHECK((*x)[1] == Gaussian(1));
}

TEST_CASE("spans") {
    std::vector<Vec> a{vec({1, 1, 0}), vec({0, 1, 1})};
    std::vector<Vec> b{vec({1, 2, 1}), vec({1, 0, -1})};
    CHECK(same_span(a, b, 3));
    CHECK(in_span(a, vec({2, 3, 1}), 3));
    CHECK(!in_span(a, vec({0, 0, 1}), 3));
    CHECK(normalized(vec({0, 2, 4}))[1].is_one());
}

TEST_CASE("echelon basis") {
    EchelonBasis E;
    CHECK(E.insert({{0, Gaussian(2)}, {3, Gaussian(1)}}));
    CHECK(E.insert({{3, Gaussian(1)}}));
    CHECK(!E.insert({{0, Gaussian(1)}}));
    CHECK(E.size() == 2);
}

TEST_CASE("projected kernel") {
    // x0 + x2 = 0, x1 - x3 = 0, x0 = 0: projection onto (x2, x3) is {x2 = 0}.
    ProjectedKernel K(2, 2);
    K.add_equation({{0, Gaussian(1)}, {2, Gaussian(1)}});
    K.add_equation({{1, Gaussian(1)}, {3, Gaussian(-1)}});
    K.add_equation({{0, Gaussian(1)}});
    auto P = K.projection();
    REQUIRE(P.size() == 1);
    CHECK(P[0][0].is_zero());
    auto x = K.lift(P[0]);
    CHECK(x[1] == P[0][1]);
}
