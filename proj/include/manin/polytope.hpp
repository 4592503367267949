#pragma once

// Exact rational volume of a hyperplane slice of a polyhedron.
//
// The region is given by linear inequalities a.z <= b in d variables plus a
// single hyperplane c.z = e.  The reported volume is the Lebesgue volume of
// the coordinate projection along the hyperplane's solved variable, divided
// by |that variable's hyperplane coefficient|.  This equals the iterated
// integral with the solved variable eliminated (the measure used for nef-cone
// volumes) and does not depend on which variable is solved.

#include <vector>

#include "manin/arith.hpp"

namespace manin {

struct LinIneq {
    std::vector<Rat> a;  // a.z <= b
    Rat b;
};

struct LinEq {
    std::vector<Rat> c;  // c.z = e
    Rat e;
};

struct SlicedPolytope {
    int dim = 0;
    std::vector<LinIneq> ineqs;
    LinEq hyperplane;
};

// (d-1)-volume of the slice.  Returns 0 for an empty or lower-dimensional
// region; throws "polytope unbounded" when the slice is unbounded.
// Slice dimensions up to 3 are supported (d <= 4).
Rat polytope_volume(const SlicedPolytope& p);

// Vertices of the projected slice (exact), mainly for tests and reports.
std::vector<std::vector<Rat>> slice_vertices(const SlicedPolytope& p);

} // namespace manin
