#pragma once

#include "crinv/series.hpp"
#include "doctest.h"

#include <random>
#include <string>

namespace crinv::test {

inline Series v(const CtxPtr& c, const std::string& name) { return Series::var(c, c->index(name)); }

inline Gaussian random_gaussian(std::mt19937& rng, bool real_only = false) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    mpq_class re(num(rng), den(rng));
    re.canonicalize();
    if (real_only) return Gaussian(re);
    mpq_class im(num(rng), den(rng));
    im.canonicalize();
    return Gaussian(re, im);
}

// Random series with up to `terms` monomials of degree <= deg.
inline Series random_series(std::mt19937& rng, const CtxPtr& c, int deg, int terms, int order = kExact,
                            bool zero_constant = false) {
    Series s(c, order);
    std::uniform_int_distribution<int> pick(0, deg);
    std::uniform_int_distribution<std::size_t> var(0, c->size() - 1);
    for (int k = 0; k < terms; ++k) {
        Exponent e(c->size(), 0);
        int d = pick(rng);
        if (zero_constant && d == 0) d = 1;
        for (int j = 0; j < d; ++j) ++e[var(rng)];
        s.add_term(e, random_gaussian(rng));
    }
    return s;
}

}  // namespace crinv::test

namespace doctest {
template <>
struct StringMaker<crinv::Series> {
    static String convert(const crinv::Series& s) { return s.str().c_str(); }
};
}  // namespace doctest
