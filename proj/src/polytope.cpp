#include "manin/polytope.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace manin {

namespace {

struct HRep {
    int k = 0;                         // ambient dimension after substitution
    std::vector<std::vector<Rat>> A;   // A y <= b
    std::vector<Rat> b;
    Rat scale = 1;                     // divide projected volume by this
};

// Substitute the solved variable of the hyperplane into every inequality.
// The solved variable is the highest-index one with a nonzero coefficient.
HRep substitute(const SlicedPolytope& p) {
    const int d = p.dim;
    if ((int)p.hyperplane.c.size() != d) throw std::invalid_argument("hyperplane dimension mismatch");
    int j = -1;
    for (int i = d - 1; i >= 0; --i) {
        if (p.hyperplane.c[i] != 0) { j = i; break; }
    }
    if (j < 0) throw std::invalid_argument("hyperplane has no variable");
    const Rat cj = p.hyperplane.c[j];

    HRep h;
    h.k = d - 1;
    h.scale = abs(cj);
    for (const auto& q : p.ineqs) {
        if ((int)q.a.size() != d) throw std::invalid_argument("inequality dimension mismatch");
        std::vector<Rat> row;
        row.reserve(d - 1);
        // z_j = (e - sum_{i != j} c_i z_i) / c_j
        Rat rhs = q.b - q.a[j] * p.hyperplane.e / cj;
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            row.push_back(q.a[i] - q.a[j] * p.hyperplane.c[i] / cj);
        }
        h.A.push_back(std::move(row));
        h.b.push_back(std::move(rhs));
    }
    return h;
}

// Solve the square system M y = r exactly; empty optional if singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> M, std::vector<Rat> r) {
    const int n = (int)r.size();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row) {
            if (M[row][col] != 0) { piv = row; break; }
        }
        if (piv < 0) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(r[piv], r[col]);
        for (int row = 0; row < n; ++row) {
            if (row == col || M[row][col] == 0) continue;
            Rat f = M[row][col] / M[col][col];
            for (int c2 = col; c2 < n; ++c2) M[row][c2] -= f * M[col][c2];
            r[row] -= f * r[col];
        }
    }
    std::vector<Rat> y(n);
    for (int i = 0; i < n; ++i) y[i] = r[i] / M[i][i];
    return y;
}

bool satisfies_all(const HRep& h, const std::vector<Rat>& y) {
    for (std::size_t i = 0; i < h.A.size(); ++i) {
        Rat lhs = 0;
        for (int c = 0; c < h.k; ++c) lhs += h.A[i][c] * y[c];
        if (lhs > h.b[i]) return false;
    }
    return true;
}

std::vector<std::vector<Rat>> enumerate_vertices(const HRep& h) {
    std::vector<std::vector<Rat>> verts;
    const int m = (int)h.A.size();
    const int k = h.k;
    if (k == 0) return verts;
    std::vector<int> idx(k);
    // all k-subsets of rows
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    if (m < k) return verts;
    while (true) {
        std::vector<std::vector<Rat>> M(k, std::vector<Rat>(k));
        std::vector<Rat> r(k);
        for (int i = 0; i < k; ++i) {
            M[i] = h.A[comb[i]];
            r[i] = h.b[comb[i]];
        }
        if (auto y = solve_square(M, r)) {
            if (satisfies_all(h, *y) &&
                std::find(verts.begin(), verts.end(), *y) == verts.end())
                verts.push_back(*y);
        }
        int i = k - 1;
        while (i >= 0 && comb[i] == m - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j2 = i + 1; j2 < k; ++j2) comb[j2] = comb[j2 - 1] + 1;
    }
    return verts;
}

// Fourier-Motzkin feasibility of A y <= b.
bool fm_feasible(std::vector<std::vector<Rat>> A, std::vector<Rat> b, int k) {
    for (int col = 0; col < k; ++col) {
        std::vector<std::vector<Rat>> A2;
        std::vector<Rat> b2;
        std::vector<int> pos, neg, zer;
        for (int i = 0; i < (int)A.size(); ++i) {
            if (A[i][col] > 0) pos.push_back(i);
            else if (A[i][col] < 0) neg.push_back(i);
            else zer.push_back(i);
        }
        for (int i : zer) {
            A2.push_back(A[i]);
            b2.push_back(b[i]);
        }
        for (int ip : pos) {
            for (int in : neg) {
                Rat cp = A[ip][col], cn = -A[in][col];
                std::vector<Rat> row(A[ip].size());
                for (std::size_t c = 0; c < row.size(); ++c)
                    row[c] = cn * A[ip][c] + cp * A[in][c];
                A2.push_back(std::move(row));
                b2.push_back(cn * b[ip] + cp * b[in]);
            }
        }
        A = std::move(A2);
        b = std::move(b2);
    }
    for (const auto& rhs : b) {
        if (rhs < 0) return false;
    }
    return true;
}

bool is_recession_dir(const HRep& h, const std::vector<Rat>& d) {
    bool nonzero = false;
    for (const auto& v : d) nonzero = nonzero || v != 0;
    if (!nonzero) return false;
    for (std::size_t i = 0; i < h.A.size(); ++i) {
        Rat lhs = 0;
        for (int c = 0; c < h.k; ++c) lhs += h.A[i][c] * d[c];
        if (lhs > 0) return false;
    }
    return true;
}

// A nonzero direction of the recession cone, if one exists.  Extreme rays of
// a pointed cone lie on k-1 active constraints, so scanning (k-1)-subsets is
// exhaustive once the line-containing case is handled separately.
bool has_recession_ray(const HRep& h) {
    const int k = h.k;
    const int m = (int)h.A.size();
    auto check = [&](const std::vector<Rat>& d) {
        return is_recession_dir(h, d) ||
               [&] {
                   std::vector<Rat> nd(d.size());
                   for (std::size_t i = 0; i < d.size(); ++i) nd[i] = -d[i];
                   return is_recession_dir(h, nd);
               }();
    };
    if (k == 1) return check({Rat(1)});
    if (k == 2) {
        for (int i = 0; i < m; ++i) {
            if (h.A[i][0] == 0 && h.A[i][1] == 0) continue;
            if (check({-h.A[i][1], h.A[i][0]})) return true;
        }
        return false;
    }
    if (k == 3) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                std::vector<Rat> d(3);
                d[0] = h.A[i][1] * h.A[j][2] - h.A[i][2] * h.A[j][1];
                d[1] = h.A[i][2] * h.A[j][0] - h.A[i][0] * h.A[j][2];
                d[2] = h.A[i][0] * h.A[j][1] - h.A[i][1] * h.A[j][0];
                if (check(d)) return true;
            }
        }
        return false;
    }
    throw std::invalid_argument("polytope_volume supports slice dimensions up to 3");
}

int angular_half_2d(const Rat& x, const Rat& y) {
    return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
}

// order 2D points counterclockwise around their centroid
std::vector<std::vector<Rat>> hull_order_2d(std::vector<std::vector<Rat>> pts) {
    Rat cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= (int)pts.size();
    cy /= (int)pts.size();
    std::sort(pts.begin(), pts.end(), [&](const std::vector<Rat>& p, const std::vector<Rat>& q) {
        Rat px = p[0] - cx, py = p[1] - cy;
        Rat qx = q[0] - cx, qy = q[1] - cy;
        int hp = angular_half_2d(px, py), hq = angular_half_2d(qx, qy);
        if (hp != hq) return hp < hq;
        return px * qy - py * qx > 0;
    });
    return pts;
}

Rat polygon_area(const std::vector<std::vector<Rat>>& pts) {
    if (pts.size() < 3) return 0;
    auto ordered = hull_order_2d(pts);
    Rat twice = 0;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const auto& p = ordered[i];
        const auto& q = ordered[(i + 1) % ordered.size()];
        twice += p[0] * q[1] - p[1] * q[0];
    }
    return abs(twice) / 2;
}

Rat det3(const std::vector<Rat>& a, const std::vector<Rat>& b, const std::vector<Rat>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Rat volume_3d(const HRep& h, const std::vector<std::vector<Rat>>& verts) {
    // apex for the pyramid decomposition
    std::vector<std::vector<Rat>> vs = verts;
    std::sort(vs.begin(), vs.end());
    const auto& apex = vs.front();

    // facets = inequality rows with a 2-dimensional set of incident vertices;
    // distinct rows can cut the same facet, so dedupe by vertex set
    std::set<std::vector<int>> seen;
    Rat six_vol = 0;
    for (std::size_t row = 0; row < h.A.size(); ++row) {
        std::vector<int> inc;
        for (int vi = 0; vi < (int)vs.size(); ++vi) {
            Rat lhs = 0;
            for (int c = 0; c < 3; ++c) lhs += h.A[row][c] * vs[vi][c];
            if (lhs == h.b[row]) inc.push_back(vi);
        }
        if ((int)inc.size() < 3) continue;
        if (!seen.insert(inc).second) continue;
        bool apex_on = std::find(inc.begin(), inc.end(), 0) != inc.end();
        if (apex_on) continue;

        // facet plane normal from two independent edge vectors
        const auto& p0 = vs[inc[0]];
        std::vector<Rat> e1(3), e2(3), n(3, Rat(0));
        bool got = false;
        for (std::size_t t = 1; t < inc.size() && !got; ++t) {
            for (int c = 0; c < 3; ++c) e1[c] = vs[inc[t]][c] - p0[c];
            for (std::size_t u = t + 1; u < inc.size() && !got; ++u) {
                for (int c = 0; c < 3; ++c) e2[c] = vs[inc[u]][c] - p0[c];
                n[0] = e1[1] * e2[2] - e1[2] * e2[1];
                n[1] = e1[2] * e2[0] - e1[0] * e2[2];
                n[2] = e1[0] * e2[1] - e1[1] * e2[0];
                got = n[0] != 0 || n[1] != 0 || n[2] != 0;
            }
        }
        if (!got) continue;  // incident set is collinear, not a facet

        // project out the coordinate where the normal is nonzero, order the
        // polygon there, then fan-triangulate
        int drop = n[0] != 0 ? 0 : (n[1] != 0 ? 1 : 2);
        std::vector<std::vector<Rat>> proj;
        for (int vi : inc) {
            std::vector<Rat> q;
            for (int c = 0; c < 3; ++c)
                if (c != drop) q.push_back(vs[vi][c]);
            q.push_back(Rat(vi));  // remember the original vertex
            proj.push_back(std::move(q));
        }
        auto ordered = hull_order_2d(proj);
        for (std::size_t t = 1; t + 1 < ordered.size(); ++t) {
            auto vid = [&](std::size_t s) {
                return (int)boost::multiprecision::numerator(ordered[s][2]);
            };
            const auto& q0 = vs[vid(0)];
            const auto& q1 = vs[vid(t)];
            const auto& q2 = vs[vid(t + 1)];
            std::vector<Rat> d0(3), d1(3), d2(3);
            for (int c = 0; c < 3; ++c) {
                d0[c] = q0[c] - apex[c];
                d1[c] = q1[c] - apex[c];
                d2[c] = q2[c] - apex[c];
            }
            six_vol += abs(det3(d0, d1, d2));
        }
    }
    return six_vol / 6;
}

}  // namespace

std::vector<std::vector<Rat>> slice_vertices(const SlicedPolytope& p) {
    return enumerate_vertices(substitute(p));
}

Rat polytope_volume(const SlicedPolytope& p) {
    HRep h = substitute(p);
    if (h.k > 3) throw std::invalid_argument("polytope_volume supports slice dimensions up to 3");

    if (!fm_feasible(h.A, h.b, h.k)) return 0;
    auto verts = enumerate_vertices(h);
    if (verts.empty()) {
        if (h.k == 0) return 1 / h.scale;  // the slice is a single point
        // nonempty without vertices means the region contains a line
        throw std::runtime_error("polytope unbounded");
    }
    if (has_recession_ray(h)) throw std::runtime_error("polytope unbounded");

    Rat vol;
    if (h.k == 1) {
        Rat lo = verts[0][0], hi = verts[0][0];
        for (const auto& v : verts) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        vol = hi - lo;
    } else if (h.k == 2) {
        vol = polygon_area(verts);
    } else {
        vol = volume_3d(h, verts);
    }
    return vol / h.scale;
}

} // namespace manin
