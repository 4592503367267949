#pragma once

// Hilbert basis of the monoid of nonnegative integer solutions of a
// homogeneous linear system, and the Cox-ring generator computation for the
// resolved cubic surface.

#include <string>
#include <vector>

namespace manin {

// Minimal nonzero solutions of A x = 0, x >= 0 (Contejean-Devie completion).
// `budget` caps the number of explored vectors; exceeding it throws.
std::vector<std::vector<int>> hilbert_basis(const std::vector<std::vector<int>>& eqs,
                                            int n_vars, std::size_t budget = 2000000);

struct CoxGenerator {
    std::string name;
    std::vector<int> exponents;  // over the nine geometric ray variables
};

struct CoxBasis {
    std::vector<std::string> variables;   // t1, t2, t2', tt1, tt1', tt2, tt2', tt3, tt3'
    std::vector<CoxGenerator> generators;
    // the single multiplicative relation eta5 * eta5_bar = eta2 * eta3^2 * eta4^3,
    // stored as exponents over the generators: lhs - rhs = 0
    std::vector<int> relation_lhs;  // exponent per generator
    std::vector<int> relation_rhs;
};

// The linear system of the Cox-ring degree computation for the resolved
// surface; exposed so tests can enumerate its truncated solution monoid.
std::vector<std::vector<int>> cox_linear_system();

// Hilbert basis of the Cox system with the canonical generator names.
CoxBasis cox_hilbert_basis();

} // namespace manin
