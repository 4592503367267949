#pragma once

// Divisor-class data of an invariant fan: the relation lattice coming from
// the invariant characters, Picard ranks, the anticanonical class, and the
// nef-cone slice polytope whose volume is the alpha factor.

#include <string>
#include <vector>

#include "manin/arith.hpp"
#include "manin/fan.hpp"
#include "manin/polytope.hpp"

namespace manin {

struct DivisorClassLattice {
    Fan2D fan;
    GaloisInvolution g;
    std::vector<std::vector<LatticeVec>> orbits;  // orbit i is the divisor D_{i+1}
    std::vector<std::string> labels;              // "D1", "D2", ...

    // image of M^g in Z^orbits: one row per invariant character
    std::vector<std::vector<i64>> relations;
    int picard_rank_invariant = 0;
    int picard_rank_geometric = 0;

    std::vector<i64> anticanonical;          // all-ones over orbit divisors
    std::vector<int> eliminated;             // orbit indices removed via relations
    std::vector<std::vector<i64>> elim_expr; // class of each eliminated divisor over kept ones
    std::vector<int> kept;                   // orbit indices forming the Pic basis
    std::vector<i64> anticanonical_reduced;  // over kept orbits

    SlicedPolytope alpha_polytope;           // in coordinates dual to the kept divisors
};

// Build the lattice data for a complete smooth invariant fan.  `orbit_order`
// optionally fixes the labelling by listing one representative ray per orbit;
// the default is the deterministic ray_orbits order.
DivisorClassLattice divisor_class_lattice(const Fan2D& f, const GaloisInvolution& g,
                                          const std::vector<LatticeVec>& orbit_order = {});

// Delta-tilde with the swap involution and the orbit labelling under which
// the divisor relation reads D5 = 2*D1 + D2 - D4 and the anticanonical class
// 3*D1 + 2*D2 + D3.
DivisorClassLattice paper_divisor_lattice();

// alpha = volume of the anticanonical slice of the dual effective cone.
Rat alpha_volume(const DivisorClassLattice& dcl);

} // namespace manin
