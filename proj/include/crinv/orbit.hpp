#pragma once

#include "crinv/manifold.hpp"

#include <string>
#include <vector>

namespace crinv {

struct OrbitOptions {
    int cap = 10;           // jet order N
    int depth_budget = -1;  // bracket depth, defaults to cap
    int max_fields = 400;
    int dim_upper_bound = -1;  // known bound on the orbit dimension, if any
};

struct OrbitResult {
    FormalSubmanifold orbit;
    Parametrization flow;             // A(t) from composed flows
    std::vector<VectorField> algebra;  // bracket closure, BFS order
    std::vector<VectorField> basis;    // fields whose values span g(0)
    int dim = 0;
    bool closed = false;  // closure stabilized (or dimension bound reached)
    int depth_used = 0;
    std::string note;
};

// Orbit of the Lie algebra generated by the given fields (Nagano-type formal
// orbit).  For Field::real the generators are complexified real fields and
// their conjugates are added.
OrbitResult lie_orbit(const std::vector<VectorField>& generators, Field field, const OrbitOptions& opt);

// exp(t V) f by Lie series, in a context extended by time variables.
Series lie_series(const VectorField& V, const Series& f, std::size_t time_var, int cap);

// Implicitization of a parametrization whose differential at 0 has full rank.
FormalSubmanifold implicitize(const Parametrization& A, CtxPtr ambient, Field field, int cap);

}  // namespace crinv
