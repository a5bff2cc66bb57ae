#pragma once

// Brute-force invariants of r = -w - wb + (z zb)^k in C^2, written against
// plain integer polynomials in (z, zb, w) and independent of the library.

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace crinv::oracle {

using Mono = std::array<int, 3>;  // exponents of z, zb, w
using Poly = std::map<Mono, long long>;

inline void add(Poly& p, const Mono& m, long long c) {
    if (c == 0) return;
    long long& x = p[m];
    x += c;
    if (x == 0) p.erase(m);
}

inline Poly operator+(Poly a, const Poly& b) {
    for (const auto& [m, c] : b) add(a, m, c);
    return a;
}

inline Poly operator-(Poly a, const Poly& b) {
    for (const auto& [m, c] : b) add(a, m, -c);
    return a;
}

inline Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [m1, c1] : a)
        for (const auto& [m2, c2] : b) add(out, {m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
    return out;
}

inline Poly diff(const Poly& p, int var) {
    Poly out;
    for (const auto& [m, c] : p)
        if (m[var] > 0) {
            Mono e = m;
            --e[var];
            add(out, e, c * m[var]);
        }
    return out;
}

inline Poly conj(const Poly& p) {
    Poly out;
    for (const auto& [m, c] : p) {
        if (m[2] != 0) throw std::logic_error("conj of a w-dependent polynomial");
        add(out, {m[1], m[0], 0}, c);
    }
    return out;
}

inline long long at_zero(const Poly& p) {
    auto it = p.find(Mono{0, 0, 0});
    return it == p.end() ? 0 : it->second;
}

inline int lowest_degree(const Poly& p) {
    int d = -1;
    for (const auto& [m, c] : p) {
        int e = m[0] + m[1] + m[2];
        if (d < 0 || e < d) d = e;
    }
    return d;
}

// Components along d/dz, d/dzb, d/dw, d/dwb; coefficients depend on z, zb.
struct Field {
    std::array<Poly, 4> c;
};

// Derivation on polynomials in (z, zb, w); d/dwb acts trivially.
inline Poly act(const Field& X, const Poly& f) {
    return X.c[0] * diff(f, 0) + X.c[1] * diff(f, 1) + X.c[2] * diff(f, 2);
}

inline Field bracket(const Field& X, const Field& Y) {
    Field Z;
    for (int j = 0; j < 4; ++j) Z.c[j] = act(X, Y.c[j]) - act(Y, X.c[j]);
    return Z;
}

struct Model {
    int k;
    Field L, Lb;
    Poly rz;  // dr/dz

    explicit Model(int k_) : k(k_) {
        Poly a{{Mono{k - 1, k, 0}, k}};
        L.c[0] = Poly{{Mono{0, 0, 0}, 1}};
        L.c[2] = a;
        Lb.c[1] = Poly{{Mono{0, 0, 0}, 1}};
        Lb.c[3] = conj(a);
        rz = a;
    }

    // The (1,0) part of dr evaluated on X: r_z X_z - X_w.
    Poly theta(const Field& X) const { return rz * X.c[0] - X.c[2]; }

    const Field& letter(int bit) const { return bit ? Lb : L; }
};

// Words of length m over {L, Lb}, bit j selecting the j-th letter.
template <class F>
void for_words(int m, F&& f) {
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> w(m);
        for (int j = 0; j < m; ++j) w[j] = mask >> j & 1;
        f(w);
    }
}

// Smallest m <= limit with a commutator of length m whose theta value at 0 is
// nonzero; limit + 1 when none.
inline int commutator_type(const Model& M, int limit) {
    for (int m = 2; m <= limit; ++m) {
        bool hit = false;
        for_words(m, [&](const std::vector<int>& w) {
            if (hit) return;
            Field X = M.letter(w[0]);
            for (int j = 1; j < m; ++j) X = bracket(M.letter(w[j]), X);
            if (at_zero(M.theta(X)) != 0) hit = true;
        });
        if (hit) return m;
    }
    return limit + 1;
}

// Smallest m with some derivative L^{m}...L^{3} theta([L^2, L^1]) nonzero at 0.
inline int levi_type(const Model& M, int limit) {
    for (int m = 2; m <= limit; ++m) {
        bool hit = false;
        for_words(m, [&](const std::vector<int>& w) {
            if (hit) return;
            Poly g = M.theta(bracket(M.letter(w[1]), M.letter(w[0])));
            for (int j = 2; j < m; ++j) g = act(M.letter(w[j]), g);
            if (at_zero(g) != 0) hit = true;
        });
        if (hit) return m;
    }
    return limit + 1;
}

inline bool levi_form_nonzero(const Model& M) { return at_zero(M.theta(bracket(M.L, M.Lb))) != 0; }

// First entry of the multitype: smallest t with a word (X^1..X^{t-1}) whose
// dual form Re or Im of X^{t-1}...X^3 theta([X^2, X^1]) has nonzero value on L at 0.
inline int first_multitype_entry(const Model& M, int limit) {
    if (levi_form_nonzero(M)) return 2;
    for (int t = 3; t <= limit; ++t) {
        bool hit = false;
        for_words(t - 1, [&](const std::vector<int>& w) {
            if (hit) return;
            Poly g = M.theta(bracket(M.letter(w[1]), M.letter(w[0])));
            for (int j = 2; j < t - 1; ++j) g = act(M.letter(w[j]), g);
            if (at_zero(act(M.L, g)) != 0 || at_zero(act(M.L, conj(g))) != 0) hit = true;
        });
        if (hit) return t;
    }
    return limit + 1;
}

// Contact type with the complex orbit of H10: holomorphic monomials z^a w^b of
// degree <= limit killed by every L-word of length <= limit span the orbit
// ideal; r is reduced modulo that ideal and its conjugate and the lowest
// surviving degree is returned (limit + 1 when nothing survives).
inline int contact_type(const Model& M, int limit, std::vector<Mono>* ideal = nullptr) {
    std::vector<Mono> killed;
    for (int d = 1; d <= limit; ++d)
        for (int a = 0; a <= d; ++a) {
            Poly f{{Mono{a, 0, d - a}, 1}};
            bool dead = true;
            Poly g = f;
            for (int len = 0; len <= limit && dead; ++len) {
                if (at_zero(g) != 0) dead = false;
                g = act(M.L, g);
            }
            if (dead) killed.push_back(Mono{a, 0, d - a});
        }
    if (ideal) *ideal = killed;
    bool w_killed = false;
    for (const auto& m : killed)
        if (m == Mono{0, 0, 1}) w_killed = true;
    Poly rest{{Mono{M.k, M.k, 0}, 1}};
    if (!w_killed) return 1;
    for (const auto& m : killed) {
        Poly reduced;
        for (const auto& [e, c] : rest) {
            // rest has no w terms, so only pure z^a generators and their conjugates act
            bool divisible = m[2] == 0 && (e[0] >= m[0] || e[1] >= m[0]);
            if (!divisible) add(reduced, e, c);
        }
        rest = reduced;
    }
    int d = lowest_degree(rest);
    return d < 0 || d > limit ? limit + 1 : d;
}

}  // namespace crinv::oracle
