#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/forms.hpp"
#include "geomforge/projgeom.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geomforge {

/// Polar space carried as its isotropic Grassmannian stack (when built from
/// a form) plus the point-line truncation. points_as_subspaces keeps the
/// provenance of the abstract points (isotropic 1-subspaces, or 2-subspaces
/// for the line Grassmannian geometry).
struct PolarSpace {
    std::optional<PseudoQuadraticForm> source;
    std::vector<std::vector<Subspace>> iso_grass; // index k-1 -> Gr_k^{[f]}
    unsigned witt = 0;
    PointLineGeometry plg;
    std::vector<Subspace> points_as_subspaces;
};

/// Complete isotropic Grassmannian stack with inclusion incidence; needs
/// Witt index >= 1 (>= 2 for a point-line geometry with lines).
inline PolarSpace build_polar(const PseudoQuadraticForm& pq,
                              const Budget& budget = Budget::defaults()) {
    PolarSpace P;
    P.source = pq;
    P.witt = witt_index(pq, budget);
    if (P.witt == 0) throw std::invalid_argument("build_polar: no isotropic points (index 0)");
    P.iso_grass.resize(P.witt);
    for (unsigned k = 1; k <= P.witt; ++k)
        P.iso_grass[k - 1] = isotropic_grassmannian(pq, k, budget);
    P.points_as_subspaces = P.iso_grass[0];
    const auto& pts = P.iso_grass[0];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
    unsigned nl = 0;
    if (P.witt >= 2) {
        const auto& lns = P.iso_grass[1];
        nl = static_cast<unsigned>(lns.size());
        for (std::uint32_t l = 0; l < lns.size(); ++l)
            for (std::uint32_t p = 0; p < pts.size(); ++p)
                if (subspace_contains(lns[l], pts[p])) inc.emplace_back(p, l);
    }
    P.plg = PointLineGeometry(static_cast<unsigned>(pts.size()), nl, inc);
    return P;
}

/// The rank-3 weak polar space on the line Grassmannian of F^4: points are
/// the 2-subspaces, lines are the incident (point, plane) pairs of PG(F^4),
/// incidence is inclusion of the 2-subspace in the pencil.
inline PolarSpace build_a32(const Gf& F, const Budget& budget = Budget::defaults()) {
    PolarSpace P;
    P.witt = 3;
    auto points = enumerate_grassmannian(4, 2, F, budget);
    auto pg_pts = enumerate_grassmannian(4, 1, F, budget);
    auto pg_pls = enumerate_grassmannian(4, 3, F, budget);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
    unsigned nl = 0;
    for (std::uint32_t a = 0; a < pg_pts.size(); ++a)
        for (std::uint32_t b = 0; b < pg_pls.size(); ++b) {
            if (!subspace_contains(pg_pls[b], pg_pts[a])) continue;
            for (std::uint32_t p = 0; p < points.size(); ++p)
                if (subspace_contains(points[p], pg_pts[a]) &&
                    subspace_contains(pg_pls[b], points[p]))
                    inc.emplace_back(p, nl);
            ++nl;
        }
    P.plg = PointLineGeometry(static_cast<unsigned>(points.size()), nl, inc);
    P.points_as_subspaces = std::move(points);
    return P;
}

// ---------------------------------------------------------------------------
// Singular subspace lattice of an abstract point-line geometry
// ---------------------------------------------------------------------------

/// Subspaces in the polar sense: pairwise collinear point sets closed under
/// full lines. Ranked by longest chains (point = 0). Desk scale only.
struct SingularLattice {
    std::vector<std::vector<std::uint32_t>> elements; // sorted point sets; [0] is empty
    std::vector<int> rank;
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    int max_rank = -1; // rank of the maximal subspaces

    std::size_t find(const std::vector<std::uint32_t>& x) const {
        auto it = index.find(x);
        if (it == index.end()) throw std::invalid_argument("not a singular subspace");
        return it->second;
    }
};

inline bool pairwise_collinear(const PointLineGeometry& G,
                               const std::vector<std::uint32_t>& X) {
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
            if (!G.collinear(X[i], X[j])) return false;
    return true;
}

inline SingularLattice singular_lattice(const PointLineGeometry& G,
                                        const Budget& budget = Budget::defaults()) {
    SingularLattice L;
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<std::uint32_t>> queue;
    seen.insert({});
    for (std::uint32_t p = 0; p < G.num_points(); ++p) {
        std::vector<std::uint32_t> single{p};
        seen.insert(single);
        queue.push_back(single);
    }
    while (!queue.empty()) {
        auto X = queue.back();
        queue.pop_back();
        for (std::uint32_t p = 0; p < G.num_points(); ++p) {
            if (std::binary_search(X.begin(), X.end(), p)) continue;
            bool ok = true;
            for (auto x : X)
                if (!G.collinear(x, p)) { ok = false; break; }
            if (!ok) continue;
            auto Y = X;
            Y.push_back(p);
            auto Z = subspace_closure(G, Y);
            if (!pairwise_collinear(G, Z)) continue;
            if (seen.insert(Z).second) {
                budget.require_enumeration(seen.size(), "singular_lattice");
                queue.push_back(Z);
            }
        }
    }
    L.elements.assign(seen.begin(), seen.end());
    std::sort(L.elements.begin(), L.elements.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    L.rank.resize(L.elements.size());
    for (std::size_t i = 0; i < L.elements.size(); ++i) {
        L.index[L.elements[i]] = i;
        if (L.elements[i].empty()) {
            L.rank[i] = -1;
            continue;
        }
        int best = -1;
        for (std::size_t j = 0; j < i; ++j)
            if (L.elements[j].size() < L.elements[i].size() && L.rank[j] > best &&
                std::includes(L.elements[i].begin(), L.elements[i].end(),
                              L.elements[j].begin(), L.elements[j].end()))
                best = L.rank[j];
        L.rank[i] = best + 1;
        L.max_rank = std::max(L.max_rank, L.rank[i]);
    }
    return L;
}

// ---------------------------------------------------------------------------
// Buekenhout-Shult axioms
// ---------------------------------------------------------------------------

struct PsAxiomReport {
    AxiomCheck ps1, ps2, ps3, ps4, ps5;
    unsigned lattice_rank = 0;           // m from the subspace lattice
    std::optional<unsigned> witt_index;  // when the geometry came with a form
    bool thick = false;                  // PS5 with "at least 3"
    bool weak = false;                   // PS1-PS4 and cover counts >= 2, some = 2
    bool all_pass() const {
        return ps1.pass && ps2.pass && ps3.pass && ps4.pass && ps5.pass;
    }
};

/// PS1: two distinct lines, >= 3 points per line, two lines sharing two
/// points coincide. PS2: every point misses some point. PS3 (one or all):
/// a point off a line is collinear with exactly one or with all of its
/// points. PS4: the subspace-lattice rank m is finite (reported). PS5:
/// every rank m-2 subspace lies in at least 3 subspaces of rank m-1; cover
/// counts of exactly 2 everywhere make the geometry weak instead.
inline PsAxiomReport check_polar_axioms(const PointLineGeometry& G,
                                        const Budget& budget = Budget::defaults()) {
    PsAxiomReport r;
    if (G.num_lines() < 2) {
        r.ps1.pass = false;
        r.ps1.witness = "fewer than 2 lines";
    }
    for (std::uint32_t l = 0; l < G.num_lines() && r.ps1.pass; ++l)
        if (G.points_of_line(l).size() < 3) {
            r.ps1.pass = false;
            r.ps1.witness = "line " + std::to_string(G.line_ids_[l]) + " has " +
                            std::to_string(G.points_of_line(l).size()) + " points";
        }
    for (std::uint32_t a = 0; a < G.num_lines() && r.ps1.pass; ++a)
        for (std::uint32_t b = a + 1; b < G.num_lines() && r.ps1.pass; ++b) {
            std::vector<std::uint32_t> common;
            std::set_intersection(G.points_of_line(a).begin(), G.points_of_line(a).end(),
                                  G.points_of_line(b).begin(), G.points_of_line(b).end(),
                                  std::back_inserter(common));
            if (common.size() >= 2) {
                r.ps1.pass = false;
                r.ps1.witness = "lines " + std::to_string(G.line_ids_[a]) + "," +
                                std::to_string(G.line_ids_[b]) + " share " +
                                std::to_string(common.size()) + " points";
            }
        }
    for (std::uint32_t p = 0; p < G.num_points() && r.ps2.pass; ++p) {
        bool found = false;
        for (std::uint32_t q = 0; q < G.num_points(); ++q)
            if (q != p && !G.collinear(p, q)) { found = true; break; }
        if (!found) {
            r.ps2.pass = false;
            r.ps2.witness = "point " + std::to_string(G.point_ids_[p]) +
                            " is collinear with every point";
        }
    }
    for (std::uint32_t p = 0; p < G.num_points() && r.ps3.pass; ++p)
        for (std::uint32_t l = 0; l < G.num_lines() && r.ps3.pass; ++l) {
            if (G.incident(p, l)) continue;
            unsigned cnt = 0;
            for (auto q : G.points_of_line(l))
                if (G.collinear(p, q)) ++cnt;
            if (cnt != 1 && cnt != G.points_of_line(l).size()) {
                r.ps3.pass = false;
                r.ps3.witness = "point " + std::to_string(G.point_ids_[p]) + " sees " +
                                std::to_string(cnt) + " of line " +
                                std::to_string(G.line_ids_[l]);
            }
        }
    SingularLattice L = singular_lattice(G, budget);
    r.lattice_rank = static_cast<unsigned>(L.max_rank + 1);
    r.ps4.pass = true; // finite geometry: rank is finite; recorded in lattice_rank
    r.ps4.witness = "rank " + std::to_string(r.lattice_rank);
    int m = L.max_rank + 1;
    unsigned min_cover = 0;
    bool first = true;
    for (std::size_t i = 0; i < L.elements.size(); ++i) {
        if (L.rank[i] != m - 2) continue;
        unsigned covers = 0;
        for (std::size_t j = 0; j < L.elements.size(); ++j)
            if (L.rank[j] == m - 1 &&
                std::includes(L.elements[j].begin(), L.elements[j].end(),
                              L.elements[i].begin(), L.elements[i].end()))
                ++covers;
        if (first || covers < min_cover) min_cover = covers;
        first = false;
        if (covers < 3 && r.ps5.pass) {
            r.ps5.pass = false;
            r.ps5.witness = "a rank-" + std::to_string(m - 2) + " subspace lies in only " +
                            std::to_string(covers) + " maximal subspaces";
        }
    }
    r.thick = r.ps1.pass && r.ps2.pass && r.ps3.pass && r.ps4.pass && r.ps5.pass;
    r.weak = r.ps1.pass && r.ps2.pass && r.ps3.pass && r.ps4.pass && !r.ps5.pass &&
             (first || min_cover >= 2);
    return r;
}

// ---------------------------------------------------------------------------
// Oriflamme complex of a weak polar space
// ---------------------------------------------------------------------------

/// Vertices are the singular subspaces of rank != m-2, with the maximal
/// subspaces split into their two natural classes (adjacency = intersection
/// of rank m-2, two-colored); incidence is containment or rank-(m-2)
/// intersection. Chambers are the maximal pairwise-incident sets.
struct OriflammeComplex {
    unsigned m = 0;
    std::vector<std::vector<std::uint32_t>> vertices; // point sets
    std::vector<int> vrank;
    std::vector<int> vclass; // 0/1 for maximal vertices, -1 otherwise
    std::vector<std::vector<char>> inc;
    std::vector<std::vector<std::uint32_t>> chambers; // sorted vertex indices
};

inline OriflammeComplex oriflamme_complex(const PointLineGeometry& G,
                                          const Budget& budget = Budget::defaults()) {
    SingularLattice L = singular_lattice(G, budget);
    int m = L.max_rank + 1;
    if (m < 2) throw std::invalid_argument("oriflamme_complex: rank below 2");
    // check weakness: every rank m-2 element in exactly two maximal subspaces
    std::vector<std::size_t> maximal;
    for (std::size_t i = 0; i < L.elements.size(); ++i)
        if (L.rank[i] == m - 1) maximal.push_back(i);
    for (std::size_t i = 0; i < L.elements.size(); ++i) {
        if (L.rank[i] != m - 2) continue;
        unsigned covers = 0;
        for (auto j : maximal)
            if (std::includes(L.elements[j].begin(), L.elements[j].end(),
                              L.elements[i].begin(), L.elements[i].end()))
                ++covers;
        if (covers != 2)
            throw std::invalid_argument(
                "oriflamme_complex: geometry is not weak (a penultimate subspace lies in " +
                std::to_string(covers) + " maximal subspaces)");
    }
    // two-color the maximal subspaces along rank-(m-2) intersections
    auto inter_rank = [&](std::size_t a, std::size_t b) {
        std::vector<std::uint32_t> common;
        std::set_intersection(L.elements[a].begin(), L.elements[a].end(),
                              L.elements[b].begin(), L.elements[b].end(),
                              std::back_inserter(common));
        auto it = L.index.find(common);
        return it == L.index.end() ? -2 : L.rank[it->second];
    };
    std::map<std::size_t, int> color;
    for (auto seed : maximal) {
        if (color.count(seed)) continue;
        color[seed] = 0;
        std::vector<std::size_t> queue{seed};
        while (!queue.empty()) {
            auto a = queue.back();
            queue.pop_back();
            for (auto b : maximal) {
                if (b == a || inter_rank(a, b) != m - 2) continue;
                if (!color.count(b)) {
                    color[b] = 1 - color[a];
                    queue.push_back(b);
                } else if (color[b] == color[a]) {
                    throw std::invalid_argument(
                        "oriflamme_complex: maximal-subspace adjacency is not bipartite");
                }
            }
        }
    }
    OriflammeComplex C;
    C.m = static_cast<unsigned>(m);
    std::map<std::size_t, std::uint32_t> vid;
    for (std::size_t i = 0; i < L.elements.size(); ++i) {
        if (L.rank[i] < 0 || L.rank[i] == m - 2) continue;
        vid[i] = static_cast<std::uint32_t>(C.vertices.size());
        C.vertices.push_back(L.elements[i]);
        C.vrank.push_back(L.rank[i]);
        C.vclass.push_back(L.rank[i] == m - 1 ? color[i] : -1);
    }
    unsigned nv = static_cast<unsigned>(C.vertices.size());
    C.inc.assign(nv, std::vector<char>(nv, 0));
    std::vector<std::size_t> lidx(nv);
    for (auto [li, v] : vid) lidx[v] = li;
    for (unsigned a = 0; a < nv; ++a)
        for (unsigned b = a + 1; b < nv; ++b) {
            bool ab = std::includes(C.vertices[b].begin(), C.vertices[b].end(),
                                    C.vertices[a].begin(), C.vertices[a].end());
            bool ba = std::includes(C.vertices[a].begin(), C.vertices[a].end(),
                                    C.vertices[b].begin(), C.vertices[b].end());
            bool cross = (C.vrank[a] == m - 1 && C.vrank[b] == m - 1 &&
                          inter_rank(lidx[a], lidx[b]) == m - 2);
            C.inc[a][b] = C.inc[b][a] = (ab || ba || cross) ? 1 : 0;
        }
    // chambers: a chain of ranks 0..m-3 inside the intersection of an
    // adjacent maximal pair, plus the two maximals
    for (unsigned a = 0; a < nv; ++a) {
        if (C.vrank[a] != m - 1 || C.vclass[a] != 0) continue;
        for (unsigned b = 0; b < nv; ++b) {
            if (C.vrank[b] != m - 1 || C.vclass[b] != 1 || !C.inc[a][b]) continue;
            std::vector<std::uint32_t> common;
            std::set_intersection(C.vertices[a].begin(), C.vertices[a].end(),
                                  C.vertices[b].begin(), C.vertices[b].end(),
                                  std::back_inserter(common));
            // chains of vertices with ranks 0..m-3 inside `common`
            std::vector<std::uint32_t> chain;
            std::function<void(int)> grow = [&](int want) {
                if (want > m - 3) {
                    auto ch = chain;
                    ch.push_back(a);
                    ch.push_back(b);
                    std::sort(ch.begin(), ch.end());
                    C.chambers.push_back(ch);
                    return;
                }
                for (unsigned v = 0; v < nv; ++v) {
                    if (C.vrank[v] != want) continue;
                    if (!std::includes(common.begin(), common.end(), C.vertices[v].begin(),
                                       C.vertices[v].end()))
                        continue;
                    if (!chain.empty() && !C.inc[chain.back()][v]) continue;
                    chain.push_back(v);
                    grow(want + 1);
                    chain.pop_back();
                }
            };
            grow(0);
        }
    }
    std::sort(C.chambers.begin(), C.chambers.end());
    return C;
}

} // namespace geomforge
