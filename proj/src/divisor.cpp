#include "manin/divisor.hpp"

#include <algorithm>
#include <stdexcept>

namespace manin {

namespace {

// integer basis of the g-fixed sublattice of M (kernel of g^T - I)
std::vector<LatticeVec> fixed_char_basis(const GaloisInvolution& g) {
    // matrix of g^T - I acting on M
    i64 k00 = g.m[0][0] - 1, k01 = g.m[1][0];
    i64 k10 = g.m[0][1], k11 = g.m[1][1] - 1;
    if (k00 == 0 && k01 == 0 && k10 == 0 && k11 == 0)
        return {LatticeVec{1, 0}, LatticeVec{0, 1}};
    if (k00 * k11 - k01 * k10 != 0) return {};
    LatticeVec v = (k00 != 0 || k01 != 0) ? LatticeVec{k01, -k00} : LatticeVec{k11, -k10};
    v = primitive_vector(v);
    // consistency with the other row
    if (k10 * v.a + k11 * v.b != 0 || k00 * v.a + k01 * v.b != 0)
        return {};
    return {v};
}

i64 pair_eval(const LatticeVec& m, const LatticeVec& u) { return m.a * u.a + m.b * u.b; }

}  // namespace

DivisorClassLattice divisor_class_lattice(const Fan2D& f, const GaloisInvolution& g,
                                          const std::vector<LatticeVec>& orbit_order) {
    if (!fan_is_complete(f) || !fan_is_smooth(f))
        throw std::invalid_argument("divisor_class_lattice: fan must be complete and smooth");
    if (!galois_check_invariance(f, g))
        throw std::invalid_argument("divisor_class_lattice: fan not invariant");

    DivisorClassLattice dcl{f, g, {}, {}, {}, 0, 0, {}, {}, {}, {}, {}, {}};
    auto orbits = ray_orbits(f, g);
    if (!orbit_order.empty()) {
        if (orbit_order.size() != orbits.size())
            throw std::invalid_argument("orbit_order must list one ray per orbit");
        std::vector<std::vector<LatticeVec>> ordered;
        for (const auto& rep : orbit_order) {
            auto it = std::find_if(orbits.begin(), orbits.end(), [&](const auto& o) {
                return std::find(o.begin(), o.end(), rep) != o.end();
            });
            if (it == orbits.end()) throw std::invalid_argument("orbit_order ray not in fan");
            ordered.push_back(*it);
            orbits.erase(it);
        }
        orbits = std::move(ordered);
    }
    dcl.orbits = orbits;
    const int n = (int)orbits.size();
    for (int i = 0; i < n; ++i) dcl.labels.push_back("D" + std::to_string(i + 1));

    // invariant characters evaluate identically on every ray of an orbit
    for (const auto& m : fixed_char_basis(g)) {
        std::vector<i64> row(n);
        for (int i = 0; i < n; ++i) row[i] = pair_eval(m, orbits[i][0]);
        dcl.relations.push_back(std::move(row));
    }

    dcl.picard_rank_geometric = picard_rank_geometric(f);
    dcl.picard_rank_invariant = n - (int)dcl.relations.size();
    dcl.anticanonical.assign(n, 1);

    // eliminate one orbit per relation through a +-1 pivot, preferring the
    // highest index, so the remaining orbits form a basis of Pic
    std::vector<std::vector<i64>> rows = dcl.relations;
    std::vector<bool> gone(n, false);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int piv = -1;
        for (int c = n - 1; c >= 0; --c) {
            if (!gone[c] && (rows[r][c] == 1 || rows[r][c] == -1)) { piv = c; break; }
        }
        if (piv < 0) throw std::runtime_error("relation lattice has no unimodular pivot");
        if (rows[r][piv] == -1)
            for (auto& v : rows[r]) v = -v;
        // [D_piv] = -sum_{j != piv} row[j] [D_j]
        std::vector<i64> expr(n, 0);
        for (int c = 0; c < n; ++c)
            if (c != piv) expr[c] = -rows[r][c];
        gone[piv] = true;
        dcl.eliminated.push_back(piv);
        dcl.elim_expr.push_back(expr);
        for (std::size_t r2 = r + 1; r2 < rows.size(); ++r2) {
            i64 f2 = rows[r2][piv];
            if (f2 == 0) continue;
            for (int c = 0; c < n; ++c) rows[r2][c] += f2 * expr[c] - (c == piv ? f2 : 0);
            rows[r2][piv] = 0;
        }
    }
    // substitute earlier-eliminated symbols out of later expressions
    for (std::size_t i = dcl.elim_expr.size(); i-- > 0;) {
        for (std::size_t j = i + 1; j < dcl.elim_expr.size(); ++j) {
            i64 coef = dcl.elim_expr[i][dcl.eliminated[j]];
            if (coef == 0) continue;
            dcl.elim_expr[i][dcl.eliminated[j]] = 0;
            for (int c = 0; c < n; ++c) dcl.elim_expr[i][c] += coef * dcl.elim_expr[j][c];
        }
    }
    for (int c = 0; c < n; ++c)
        if (!gone[c]) dcl.kept.push_back(c);

    dcl.anticanonical_reduced.assign(dcl.kept.size(), 0);
    {
        std::vector<i64> acc(n, 0);
        for (int c = 0; c < n; ++c) acc[c] = dcl.anticanonical[c];
        for (std::size_t e = 0; e < dcl.eliminated.size(); ++e) {
            i64 coef = acc[dcl.eliminated[e]];
            if (coef == 0) continue;
            acc[dcl.eliminated[e]] = 0;
            for (int c = 0; c < n; ++c) acc[c] += coef * dcl.elim_expr[e][c];
        }
        for (std::size_t i = 0; i < dcl.kept.size(); ++i)
            dcl.anticanonical_reduced[i] = acc[dcl.kept[i]];
    }

    // dual effective cone sliced by the anticanonical hyperplane, in the
    // coordinates dual to the kept divisor classes
    const int k = (int)dcl.kept.size();
    SlicedPolytope poly;
    poly.dim = k;
    for (int i = 0; i < k; ++i) {
        LinIneq q;
        q.a.assign(k, Rat(0));
        q.a[i] = -1;  // z_i >= 0
        q.b = 0;
        poly.ineqs.push_back(q);
    }
    for (std::size_t e = 0; e < dcl.eliminated.size(); ++e) {
        LinIneq q;
        q.a.assign(k, Rat(0));
        bool nontrivial = false;
        for (int i = 0; i < k; ++i) {
            q.a[i] = -dcl.elim_expr[e][dcl.kept[i]];  // <z, [D_elim]> >= 0
            nontrivial = nontrivial || q.a[i] != 0;
        }
        q.b = 0;
        if (nontrivial) poly.ineqs.push_back(q);
    }
    poly.hyperplane.c.assign(k, Rat(0));
    for (int i = 0; i < k; ++i) poly.hyperplane.c[i] = dcl.anticanonical_reduced[i];
    poly.hyperplane.e = 1;
    dcl.alpha_polytope = poly;
    return dcl;
}

DivisorClassLattice paper_divisor_lattice() {
    return divisor_class_lattice(
        delta_tilde(), GaloisInvolution::coordinate_swap(),
        {LatticeVec{-1, -1}, LatticeVec{-1, 0}, LatticeVec{-1, 1}, LatticeVec{-1, 2},
         LatticeVec{0, 1}});
}

Rat alpha_volume(const DivisorClassLattice& dcl) { return polytope_volume(dcl.alpha_polytope); }

} // namespace manin
