#pragma once

#include "crinv/cr.hpp"
#include "crinv/hypersurface.hpp"
#include "crinv/orbit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crinv {

// An exact integer, or "at least bound" when nothing was detected below it.
struct Bounded {
    int value = 0;
    bool at_least = false;

    static Bounded finite(int v) { return Bounded{v, false}; }
    static Bounded lower(int bound) { return Bounded{bound, true}; }
    bool is_finite() const { return !at_least; }
    // Orders "≥b" above every integer < b.
    int rank() const { return at_least ? value + 1 : value; }
    std::string str() const;
    friend bool operator==(const Bounded& a, const Bounded& b) { return a.value == b.value && a.at_least == b.at_least; }
};

// Fields of E followed by their conjugates.
std::vector<VectorField> frame_letters(const Hypersurface& S, const SubbundleFrame& E, int cap);

Bounded commutator_type(const Hypersurface& S, const SubbundleFrame& E, int word_bound);
Bounded levi_type(const Hypersurface& S, const SubbundleFrame& E, int word_bound);

struct ComplexOrbit {
    CtxPtr hctx;                  // holomorphic coordinates
    std::vector<Series> ideal;    // basis of I up to degree jet_order
    std::optional<FormalSubmanifold> manifold;  // set when I is a manifold ideal at this order
    int jet_order = 0;
    int word_length = 0;  // longest word used
};

ComplexOrbit complex_formal_orbit(const Hypersurface& S, const SubbundleFrame& E, int jet_order);
// Largest k <= jet_order with r in I(V) + m^k; ideal given in holomorphic coordinates.
Bounded contact_order(const Hypersurface& S, const std::vector<Series>& ideal, int jet_order);
// Largest k with r in I_{k-1} + m^k, where I_{k-1} is annihilated by words of length < k.
Bounded contact_type(const Hypersurface& S, const SubbundleFrame& E, int jet_order);

struct RealOrbit {
    OrbitResult result;
    bool inside_s = false;  // r lies in I(orbit)

    const FormalSubmanifold& manifold() const { return result.orbit; }
    int dim() const { return result.dim; }
};

RealOrbit real_formal_orbit(const Hypersurface& S, const SubbundleFrame& E);

struct HuangYin {
    bool holds = false;
    RealOrbit orbit;
    CRVerdict cr;
    std::optional<Complexification> complexification;
};

HuangYin huang_yin_check(const Hypersurface& S, const SubbundleFrame& E, bool complexify = true);

}  // namespace crinv
