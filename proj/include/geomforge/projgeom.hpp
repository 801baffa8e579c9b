#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/forms.hpp"
#include "geomforge/matvec.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace geomforge {

/// Finite point-line incidence structure. Points and lines are dense
/// indices; the original external ids (from the interchange format) are kept
/// alongside for reporting.
class PointLineGeometry {
public:
    PointLineGeometry() = default;
    PointLineGeometry(unsigned points, unsigned lines,
                      std::vector<std::pair<std::uint32_t, std::uint32_t>> incidences)
        : np_(points), nl_(lines), line_pts_(lines), pt_lines_(points) {
        for (auto [p, l] : incidences) {
            if (p >= np_ || l >= nl_) throw std::invalid_argument("incidence out of range");
            line_pts_[l].push_back(p);
            pt_lines_[p].push_back(l);
        }
        for (auto& v : line_pts_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        for (auto& v : pt_lines_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        point_ids_.resize(np_);
        line_ids_.resize(nl_);
        for (unsigned i = 0; i < np_; ++i) point_ids_[i] = i;
        for (unsigned i = 0; i < nl_; ++i) line_ids_[i] = i;
    }

    unsigned num_points() const { return np_; }
    unsigned num_lines() const { return nl_; }
    const std::vector<std::uint32_t>& points_of_line(std::uint32_t l) const { return line_pts_[l]; }
    const std::vector<std::uint32_t>& lines_of_point(std::uint32_t p) const { return pt_lines_[p]; }

    bool incident(std::uint32_t p, std::uint32_t l) const {
        const auto& v = line_pts_[l];
        return std::binary_search(v.begin(), v.end(), p);
    }

    /// Lines through both points, ascending.
    std::vector<std::uint32_t> joining_lines(std::uint32_t p, std::uint32_t q) const {
        std::vector<std::uint32_t> out;
        std::set_intersection(pt_lines_[p].begin(), pt_lines_[p].end(), pt_lines_[q].begin(),
                              pt_lines_[q].end(), std::back_inserter(out));
        return out;
    }
    bool collinear(std::uint32_t p, std::uint32_t q) const {
        return p == q || !joining_lines(p, q).empty();
    }

    std::vector<std::uint64_t> point_ids_, line_ids_; // external labels

private:
    unsigned np_ = 0, nl_ = 0;
    std::vector<std::vector<std::uint32_t>> line_pts_;
    std::vector<std::vector<std::uint32_t>> pt_lines_;
};

// --- interchange format: lines "p <id>", "l <id>", "i <pid> <lid>" ---

inline PointLineGeometry parse_geometry(const std::string& text) {
    std::map<std::uint64_t, std::uint32_t> pmap, lmap;
    std::vector<std::uint64_t> pids, lids;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_inc;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
        if (tag == "p") {
            std::uint64_t id;
            if (!(ls >> id)) throw std::invalid_argument("bad point line: " + line);
            if (pmap.count(id)) throw std::invalid_argument("repeated point id");
            pmap[id] = static_cast<std::uint32_t>(pids.size());
            pids.push_back(id);
        } else if (tag == "l") {
            std::uint64_t id;
            if (!(ls >> id)) throw std::invalid_argument("bad line record: " + line);
            if (lmap.count(id)) throw std::invalid_argument("repeated line id");
            lmap[id] = static_cast<std::uint32_t>(lids.size());
            lids.push_back(id);
        } else if (tag == "i") {
            std::uint64_t p, l;
            if (!(ls >> p >> l)) throw std::invalid_argument("bad incidence: " + line);
            raw_inc.emplace_back(p, l);
        } else {
            throw std::invalid_argument("unknown record tag: " + tag);
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
    for (auto [p, l] : raw_inc) {
        if (!pmap.count(p) || !lmap.count(l))
            throw std::invalid_argument("incidence references unknown id");
        inc.emplace_back(pmap[p], lmap[l]);
    }
    PointLineGeometry G(static_cast<unsigned>(pids.size()), static_cast<unsigned>(lids.size()),
                        inc);
    G.point_ids_ = pids;
    G.line_ids_ = lids;
    return G;
}

inline std::string serialize_geometry(const PointLineGeometry& G) {
    std::string out;
    for (unsigned p = 0; p < G.num_points(); ++p)
        out += "p " + std::to_string(G.point_ids_[p]) + "\n";
    for (unsigned l = 0; l < G.num_lines(); ++l)
        out += "l " + std::to_string(G.line_ids_[l]) + "\n";
    for (unsigned l = 0; l < G.num_lines(); ++l)
        for (auto p : G.points_of_line(l))
            out += "i " + std::to_string(G.point_ids_[p]) + " " + std::to_string(G.line_ids_[l]) +
                   "\n";
    return out;
}

// --- projective point-line axioms ---

struct AxiomCheck {
    bool pass = true;
    std::string witness;
};

struct PgAxiomReport {
    AxiomCheck pg1, pg2, pg3, pg4;
    bool all_pass() const { return pg1.pass && pg2.pass && pg3.pass && pg4.pass; }
    /// two disjoint lines exist: projective space rather than plane
    bool has_disjoint_lines = false;
};

/// PG1: every line carries at least 3 points. PG2: two distinct points lie
/// on exactly one common line. PG3: at least 2 lines. PG4 (Veblen): a line
/// meeting two sides of a triangle in distinct points meets the third.
/// Witnesses are the first offending tuples in lexicographic order.
inline PgAxiomReport check_pg_axioms(const PointLineGeometry& G) {
    PgAxiomReport r;
    for (std::uint32_t l = 0; l < G.num_lines() && r.pg1.pass; ++l)
        if (G.points_of_line(l).size() < 3) {
            r.pg1.pass = false;
            r.pg1.witness = "line " + std::to_string(G.line_ids_[l]) + " has " +
                            std::to_string(G.points_of_line(l).size()) + " points";
        }
    for (std::uint32_t p = 0; p < G.num_points() && r.pg2.pass; ++p)
        for (std::uint32_t q = p + 1; q < G.num_points() && r.pg2.pass; ++q) {
            auto j = G.joining_lines(p, q);
            if (j.size() != 1) {
                r.pg2.pass = false;
                r.pg2.witness = "points " + std::to_string(G.point_ids_[p]) + "," +
                                std::to_string(G.point_ids_[q]) + " lie on " +
                                std::to_string(j.size()) + " common lines";
            }
        }
    if (G.num_lines() < 2) {
        r.pg3.pass = false;
        r.pg3.witness = "only " + std::to_string(G.num_lines()) + " line(s)";
    }
    // PG4 scan with incidence-index pruning: q and r range over points
    // collinear with p.
    for (std::uint32_t p = 0; p < G.num_points() && r.pg4.pass; ++p) {
        std::vector<std::uint32_t> near;
        for (auto l : G.lines_of_point(p))
            for (auto q : G.points_of_line(l))
                if (q != p) near.push_back(q);
        std::sort(near.begin(), near.end());
        near.erase(std::unique(near.begin(), near.end()), near.end());
        for (auto q : near) {
            if (!r.pg4.pass) break;
            auto l1v = G.joining_lines(p, q);
            if (l1v.empty()) continue;
            std::uint32_t l1 = l1v.front();
            for (auto rr : near) {
                if (!r.pg4.pass) break;
                if (rr == q) continue;
                auto l2v = G.joining_lines(p, rr);
                if (l2v.empty()) continue;
                std::uint32_t l2 = l2v.front();
                for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
                    // x on l and l1, y on l and l2, x != y
                    bool premise = false;
                    for (auto x : G.points_of_line(l)) {
                        if (!G.incident(x, l1)) continue;
                        for (auto y : G.points_of_line(l)) {
                            if (y != x && G.incident(y, l2)) { premise = true; break; }
                        }
                        if (premise) break;
                    }
                    if (!premise) continue;
                    bool meets = false;
                    for (auto l3 : G.joining_lines(q, rr)) {
                        for (auto z : G.points_of_line(l))
                            if (G.incident(z, l3)) { meets = true; break; }
                        if (meets) break;
                    }
                    if (!meets) {
                        r.pg4.pass = false;
                        r.pg4.witness =
                            "p=" + std::to_string(G.point_ids_[p]) +
                            " q=" + std::to_string(G.point_ids_[q]) +
                            " r=" + std::to_string(G.point_ids_[rr]) +
                            " l=" + std::to_string(G.line_ids_[l]);
                        break;
                    }
                }
            }
        }
    }
    for (std::uint32_t a = 0; a < G.num_lines() && !r.has_disjoint_lines; ++a)
        for (std::uint32_t b = a + 1; b < G.num_lines(); ++b) {
            const auto& pa = G.points_of_line(a);
            const auto& pb = G.points_of_line(b);
            std::vector<std::uint32_t> common;
            std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                                  std::back_inserter(common));
            if (common.empty()) {
                r.has_disjoint_lines = true;
                break;
            }
        }
    return r;
}

// --- closure and rank ---

/// Smallest line-closed point set containing S: whenever two distinct
/// members are joined by a line, the whole point row joins. Idempotent,
/// monotone, extensive.
inline std::vector<std::uint32_t> subspace_closure(const PointLineGeometry& G,
                                                   std::vector<std::uint32_t> S) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    std::set<std::uint32_t> X(S.begin(), S.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(X.begin(), X.end());
        for (std::size_t i = 0; i < cur.size() && !grew; ++i)
            for (std::size_t j = i + 1; j < cur.size() && !grew; ++j)
                for (auto l : G.joining_lines(cur[i], cur[j]))
                    for (auto p : G.points_of_line(l))
                        if (!X.count(p)) {
                            X.insert(p);
                            grew = true;
                        }
    }
    return {X.begin(), X.end()};
}

inline bool is_closed_subspace(const PointLineGeometry& G, const std::vector<std::uint32_t>& X) {
    return subspace_closure(G, X) == X;
}

/// All closed subspaces contained in `within` (the whole point set by
/// default), by closure of incremental extensions; includes the empty set.
inline std::vector<std::vector<std::uint32_t>> closed_subspaces_below(
    const PointLineGeometry& G, const std::vector<std::uint32_t>& within,
    const Budget& budget = Budget::defaults()) {
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<std::uint32_t>> queue;
    seen.insert({});
    for (auto p : within) {
        std::vector<std::uint32_t> single{p};
        if (seen.insert(single).second) queue.push_back(single);
    }
    std::set<std::uint32_t> scope(within.begin(), within.end());
    while (!queue.empty()) {
        auto X = queue.back();
        queue.pop_back();
        for (auto p : within) {
            if (std::binary_search(X.begin(), X.end(), p)) continue;
            auto Y = X;
            Y.push_back(p);
            auto Z = subspace_closure(G, Y);
            bool inside = std::all_of(Z.begin(), Z.end(),
                                      [&](std::uint32_t z) { return scope.count(z) > 0; });
            if (!inside) continue;
            if (seen.insert(Z).second) {
                budget.require_enumeration(seen.size(), "closed_subspaces_below");
                queue.push_back(Z);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

/// rk(empty) = -1, rk(point) = 0, and rk(X) is the length of a longest
/// chain of proper closed subspaces below X.
inline int subspace_rank(const PointLineGeometry& G, const std::vector<std::uint32_t>& X,
                         const Budget& budget = Budget::defaults()) {
    if (!is_closed_subspace(G, X)) throw std::invalid_argument("subspace_rank: set is not closed");
    auto all = closed_subspaces_below(G, X, budget);
    // longest-chain DP over the inclusion order, smallest sets first
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<int> rank(all.size(), -1);
    int result = -1;
    for (std::size_t i = 0; i < all.size(); ++i) {
        int best = -1;
        for (std::size_t j = 0; j < i; ++j) {
            if (all[j].size() >= all[i].size() || rank[j] < best) continue;
            if (std::includes(all[i].begin(), all[i].end(), all[j].begin(), all[j].end()))
                best = rank[j];
        }
        rank[i] = (all[i].empty()) ? -1 : best + 1;
        if (all[i] == X) result = rank[i];
    }
    return result;
}

// --- the projective geometry PG(V) ---

/// Full Grassmannian stack of PG(V) for V = F^{n+1}: ranks 1..n with
/// symmetrized-inclusion incidence, plus the point-line truncation.
class ProjectiveGeometry {
public:
    ProjectiveGeometry(unsigned rank, const Gf& F, const Budget& budget = Budget::defaults())
        : F_(&F), rank_(rank) {
        if (rank < 1) throw std::invalid_argument("projective rank must be >= 1");
        unsigned dim = rank + 1;
        grass_.resize(rank);
        index_.resize(rank);
        for (unsigned k = 1; k <= rank; ++k) {
            grass_[k - 1] = enumerate_grassmannian(dim, k, F, budget);
            for (std::size_t i = 0; i < grass_[k - 1].size(); ++i)
                index_[k - 1].emplace(grass_[k - 1][i], static_cast<std::uint32_t>(i));
        }
    }

    const Gf& field() const { return *F_; }
    unsigned rank() const { return rank_; }
    unsigned dim() const { return rank_ + 1; }
    const std::vector<Subspace>& grassmannian(unsigned k) const { return grass_.at(k - 1); }

    std::uint32_t index_of(const Subspace& S) const {
        const auto& idx = index_.at(S.dim() - 1);
        auto it = idx.find(S);
        if (it == idx.end()) throw std::invalid_argument("subspace not in geometry");
        return it->second;
    }

    PointLineGeometry truncation_1_2() const {
        if (rank_ < 2) throw std::invalid_argument("need rank >= 2 for a point-line truncation");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
        const auto& pts = grass_[0];
        const auto& lns = grass_[1];
        for (std::uint32_t l = 0; l < lns.size(); ++l)
            for (std::uint32_t p = 0; p < pts.size(); ++p)
                if (subspace_contains(lns[l], pts[p])) inc.emplace_back(p, l);
        return PointLineGeometry(static_cast<unsigned>(pts.size()),
                                 static_cast<unsigned>(lns.size()), inc);
    }

private:
    const Gf* F_;
    unsigned rank_;
    std::vector<std::vector<Subspace>> grass_;
    std::vector<std::map<Subspace, std::uint32_t>> index_;
};

inline ProjectiveGeometry build_pg(unsigned rank, const Gf& F,
                                   const Budget& budget = Budget::defaults()) {
    return ProjectiveGeometry(rank, F, budget);
}

// --- polarity induced by a non-degenerate hermitian form ---

/// U -> {v : h(u,v) = 0 for all u in U} for h given by a Gram matrix and
/// anti-automorphism descriptor. Inclusion-reversing involution when h is
/// non-degenerate and (sigma, eps)-hermitian.
inline Subspace perp(const FMat& h_gram, const FieldAuto& sigma, const Subspace& U) {
    const Gf& F = h_gram.field();
    unsigned n = h_gram.rows();
    if (U.dim() == 0) return Subspace::full(F, n);
    VSpace V(F, n);
    FMat cond(F, U.dim(), n);
    for (unsigned r = 0; r < U.dim(); ++r)
        for (unsigned j = 0; j < n; ++j) {
            std::uint32_t acc = 0;
            for (unsigned i = 0; i < n; ++i)
                acc = F.add(acc, F.mul(sigma(V.digit(U.cols()[r], i)), h_gram.at(i, j)));
            cond.at(r, j) = acc;
        }
    return kernel(cond);
}

/// Polarity as a map on the whole subspace lattice; requires h
/// non-degenerate.
class Polarity {
public:
    Polarity(FMat h_gram, FieldAuto sigma) : h_(std::move(h_gram)), sigma_(sigma) {
        if (kernel(h_).dim() != 0)
            throw std::invalid_argument("polarity requires a non-degenerate form");
    }
    Subspace operator()(const Subspace& U) const { return perp(h_, sigma_, U); }
    const FMat& gram() const { return h_; }

private:
    FMat h_;
    FieldAuto sigma_;
};

inline Polarity polarity_from_form(const PseudoQuadraticForm& pq) {
    return Polarity(pq.h_gram(), pq.param().sigma());
}

} // namespace geomforge
