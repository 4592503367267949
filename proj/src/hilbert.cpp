#include "manin/hilbert.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace manin {

namespace {

using Vec = std::vector<int>;

Vec apply(const std::vector<Vec>& eqs, const Vec& x) {
    Vec v(eqs.size(), 0);
    for (std::size_t r = 0; r < eqs.size(); ++r) {
        long long s = 0;
        for (std::size_t c = 0; c < x.size(); ++c) s += (long long)eqs[r][c] * x[c];
        v[r] = (int)s;
    }
    return v;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool dominates(const Vec& small, const Vec& big) {
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] > big[i]) return false;
    }
    return true;
}

}  // namespace

// Breadth-first completion: grow candidates x by unit steps that decrease
// |A x|^2, collect the x with A x = 0, and prune everything strictly above an
// already-found solution.  Level-by-level search makes every recorded
// solution minimal.
std::vector<std::vector<int>> hilbert_basis(const std::vector<std::vector<int>>& eqs,
                                            int n_vars, std::size_t budget) {
    for (const auto& row : eqs) {
        if ((int)row.size() != n_vars) throw std::invalid_argument("equation width mismatch");
    }
    std::vector<Vec> minimal;
    std::set<Vec> frontier;
    for (int j = 0; j < n_vars; ++j) {
        Vec e(n_vars, 0);
        e[j] = 1;
        frontier.insert(std::move(e));
    }
    std::size_t explored = 0;
    while (!frontier.empty()) {
        std::set<Vec> next;
        for (const Vec& x : frontier) {
            if (++explored > budget)
                throw std::runtime_error("hilbert_basis: completion budget exceeded");
            Vec ax = apply(eqs, x);
            if (is_zero(ax)) {
                bool dominated = false;
                for (const auto& s : minimal) {
                    if (dominates(s, x)) { dominated = true; break; }
                }
                if (!dominated) minimal.push_back(x);
                continue;
            }
            for (int j = 0; j < n_vars; ++j) {
                // move only against the defect: <A x, A e_j> < 0
                long long dot = 0;
                for (std::size_t r = 0; r < eqs.size(); ++r)
                    dot += (long long)ax[r] * eqs[r][j];
                if (dot >= 0) continue;
                Vec y = x;
                ++y[j];
                bool dominated = false;
                for (const auto& s : minimal) {
                    if (dominates(s, y)) { dominated = true; break; }
                }
                if (!dominated) next.insert(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

// Variables are the exponents of (t1, t2, t2', tt1, tt1', tt2, tt2', tt3, tt3').
// The degree system of the intermediate torsor collapses to four homogeneous
// equations; t1 is unconstrained.
std::vector<std::vector<int>> cox_linear_system() {
    //                 t1  t2 t2' tt1 tt1' tt2 tt2' tt3 tt3'
    return {
        {0, 0, 0, 1, -1, 0, 0, -1, 1},   // tt3' + tt1 = tt3 + tt1'
        {0, 0, 0, 0, 0, -1, 1, 2, -2},   // tt2' + tt3 - tt3' = tt2 + tt3' - tt3
        {0, 1, 0, 0, 0, 0, 0, -2, 1},    // t2 + tt3' - 2 tt3 = 0
        {0, 0, 1, 0, 0, 0, 0, 1, -2},    // t2' + tt3 - 2 tt3' = 0
    };
}

CoxBasis cox_hilbert_basis() {
    CoxBasis cb;
    cb.variables = {"t1", "t2", "t2'", "tt1", "tt1'", "tt2", "tt2'", "tt3", "tt3'"};
    auto basis = hilbert_basis(cox_linear_system(), 9);

    const std::map<Vec, std::string> expected = {
        {{1, 0, 0, 0, 0, 0, 0, 0, 0}, "eta1"},
        {{0, 0, 0, 1, 1, 0, 0, 0, 0}, "eta2"},
        {{0, 0, 0, 0, 0, 1, 1, 0, 0}, "eta3"},
        {{0, 1, 1, 0, 0, 0, 0, 1, 1}, "eta4"},
        {{0, 3, 0, 1, 0, 2, 0, 2, 1}, "eta5"},
        {{0, 0, 3, 0, 1, 0, 2, 1, 2}, "eta5_bar"},
    };

    bool canonical = basis.size() == expected.size();
    for (const auto& v : basis) canonical = canonical && expected.count(v) > 0;

    if (canonical) {
        for (const auto& [vec, name] : expected)
            cb.generators.push_back(CoxGenerator{name, vec});
        std::sort(cb.generators.begin(), cb.generators.end(),
                  [](const CoxGenerator& a, const CoxGenerator& b) { return a.name < b.name; });
        // eta5 * eta5_bar = eta2 * eta3^2 * eta4^3 (checked as exponent vectors)
        auto exp_of = [&](const std::string& n) {
            for (const auto& g : cb.generators)
                if (g.name == n) return g.exponents;
            throw std::logic_error("generator missing");
        };
        Vec lhs(9, 0), rhs(9, 0);
        for (int i = 0; i < 9; ++i) {
            lhs[i] = exp_of("eta5")[i] + exp_of("eta5_bar")[i];
            rhs[i] = exp_of("eta2")[i] + 2 * exp_of("eta3")[i] + 3 * exp_of("eta4")[i];
        }
        if (lhs != rhs) throw std::logic_error("cox basis relation violated");
        cb.relation_lhs = {0, 0, 0, 0, 1, 1};  // alphabetical: eta1..eta4, eta5, eta5_bar
        cb.relation_rhs = {0, 1, 2, 3, 0, 0};
    } else {
        int i = 0;
        for (const auto& v : basis) cb.generators.push_back(CoxGenerator{"g" + std::to_string(++i), v});
    }
    return cb;
}

} // namespace manin
