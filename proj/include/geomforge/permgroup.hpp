#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geomforge {

/// Permutation group given by generators, with a deterministic Schreier-Sims
/// stabilizer chain (no randomization): base points are chosen as the
/// smallest point moved by the offending residue, generators are processed
/// in insertion order, and orbits are explored breadth-first. The same
/// generators therefore always produce the same chain, orders, and
/// transversals. After construction the object is immutable.
class PermGroup {
public:
    PermGroup() : n_(0) {}

    /// base_hint forces a prefix of the base (used for point stabilizers);
    /// hinted points are kept in the base even when their orbits are trivial.
    explicit PermGroup(unsigned degree, std::vector<Perm> gens = {},
                       std::vector<std::uint32_t> base_hint = {})
        : n_(degree), gens_(std::move(gens)) {
        for (auto b : base_hint) push_level(b);
        for (const auto& g : gens_) {
            if (g.degree() != n_) throw std::invalid_argument("generator degree mismatch");
            insert(g);
        }
    }

    unsigned degree() const { return n_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<std::uint32_t>& base() const { return base_; }

    std::uint64_t order() const {
        std::uint64_t o = 1;
        for (const auto& orb : orbit_) o *= orb.size();
        return o;
    }
    bool is_trivial() const { return order() == 1; }

    bool contains(const Perm& g) const {
        if (g.degree() != n_) return false;
        auto [res, lvl] = strip(g, 0);
        (void)lvl;
        return res.is_identity();
    }

    std::vector<std::uint32_t> orbit(std::uint32_t x) const {
        std::vector<std::uint32_t> orb{x};
        std::vector<char> seen(n_, 0);
        seen[x] = 1;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens_) {
                std::uint32_t y = g(orb[i]);
                if (!seen[y]) {
                    seen[y] = 1;
                    orb.push_back(y);
                }
            }
        return orb;
    }

    std::vector<std::vector<std::uint32_t>> orbits() const {
        std::vector<std::vector<std::uint32_t>> out;
        std::vector<char> seen(n_, 0);
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            auto orb = orbit(x);
            for (auto y : orb) seen[y] = 1;
            std::sort(orb.begin(), orb.end());
            out.push_back(std::move(orb));
        }
        return out;
    }

    bool is_transitive() const { return n_ > 0 && orbit(0).size() == n_; }

    /// Generators of the stabilizer of x (strong generators past a base
    /// starting at x), as a fresh group.
    PermGroup stabilizer(std::uint32_t x) const { return pointwise_stabilizer({x}); }

    PermGroup pointwise_stabilizer(const std::vector<std::uint32_t>& pts) const {
        // Rebuild a chain whose base starts with pts, then collect the strong
        // generators fixing all of them.
        PermGroup rebased(n_, gens_, pts);
        std::vector<Perm> stab_gens;
        for (const auto& tagged : rebased.strong_) {
            if (tagged.level >= pts.size()) stab_gens.push_back(tagged.g);
        }
        return PermGroup(n_, std::move(stab_gens));
    }

    /// Representative with g(base[i]) mapped along the chain; empty if x is
    /// not in the level-0 orbit.
    std::optional<Perm> transversal_element(std::size_t level, std::uint32_t point) const {
        if (level >= orbit_.size()) return std::nullopt;
        int pos = orbit_pos_[level][point];
        if (pos < 0) return std::nullopt;
        return trans_[level][pos];
    }

    /// All elements, in deterministic chain-traversal order.
    std::vector<Perm> elements(const Budget& budget = Budget::defaults()) const {
        budget.require_group_order(order(), "PermGroup::elements");
        std::vector<Perm> out;
        out.reserve(static_cast<std::size_t>(order()));
        Perm id = Perm::identity(n_);
        rec_elements(0, id, out);
        return out;
    }

    struct StrongGen {
        Perm g;
        std::size_t level; // fixes base[0..level)
    };

private:
    void rec_elements(std::size_t level, const Perm& acc, std::vector<Perm>& out) const {
        if (level == base_.size()) {
            out.push_back(acc);
            return;
        }
        for (std::size_t i = 0; i < trans_[level].size(); ++i)
            rec_elements(level + 1, acc * trans_[level][i], out);
    }

    void push_level(std::uint32_t b) {
        base_.push_back(b);
        orbit_.emplace_back();
        orbit_pos_.emplace_back(n_, -1);
        trans_.emplace_back();
        rebuild_orbit(base_.size() - 1);
    }

    std::vector<const Perm*> level_gens(std::size_t level) const {
        std::vector<const Perm*> out;
        for (const auto& sg : strong_)
            if (sg.level >= level) out.push_back(&sg.g);
        return out;
    }

    void rebuild_orbit(std::size_t level) {
        auto& orb = orbit_[level];
        auto& pos = orbit_pos_[level];
        auto& tr = trans_[level];
        orb.clear();
        std::fill(pos.begin(), pos.end(), -1);
        tr.clear();
        orb.push_back(base_[level]);
        pos[base_[level]] = 0;
        tr.push_back(Perm::identity(n_));
        auto gens = level_gens(level);
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const Perm* g : gens) {
                std::uint32_t y = (*g)(orb[i]);
                if (pos[y] < 0) {
                    pos[y] = static_cast<int>(orb.size());
                    orb.push_back(y);
                    tr.push_back(*g * tr[i]);
                }
            }
    }

    std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
        for (std::size_t i = from; i < base_.size(); ++i) {
            std::uint32_t x = g(base_[i]);
            int pos = orbit_pos_[i][x];
            if (pos < 0) return {g, i};
            g = trans_[i][pos].inverse() * g;
        }
        return {g, base_.size()};
    }

    void insert(const Perm& g) {
        std::vector<std::pair<Perm, std::size_t>> queue{{g, 0}};
        while (!queue.empty()) {
            auto [h, from] = queue.back();
            queue.pop_back();
            auto [res, level] = strip(h, from);
            if (res.is_identity()) continue;
            if (level == base_.size()) {
                int b = res.smallest_moved();
                push_level(static_cast<std::uint32_t>(b));
            }
            strong_.push_back({res, level});
            // New strong generator affects orbits at levels <= level.
            for (std::size_t i = 0; i <= level; ++i) rebuild_orbit(i);
            // Close under Schreier generators at every affected level.
            for (std::size_t i = level + 1; i-- > 0;) {
                auto gens = level_gens(i);
                for (std::size_t t = 0; t < orbit_[i].size(); ++t)
                    for (const Perm* s : gens) {
                        std::uint32_t y = (*s)(orbit_[i][t]);
                        Perm schreier =
                            trans_[i][orbit_pos_[i][y]].inverse() * (*s * trans_[i][t]);
                        auto [r2, l2] = strip(schreier, i + 1);
                        if (!r2.is_identity()) queue.push_back({r2, i + 1});
                    }
            }
        }
    }

    unsigned n_;
    std::vector<Perm> gens_;
    std::vector<std::uint32_t> base_;
    std::vector<StrongGen> strong_;
    std::vector<std::vector<std::uint32_t>> orbit_;
    std::vector<std::vector<int>> orbit_pos_;
    std::vector<std::vector<Perm>> trans_;
};

/// Largest t such that G is t-transitive, via iterated point stabilizers
/// acting on the remaining points; 0 for an intransitive group.
inline unsigned transitivity_degree(const PermGroup& G) {
    unsigned t = 0;
    PermGroup H = G;
    std::vector<std::uint32_t> active(G.degree());
    std::iota(active.begin(), active.end(), 0u);
    while (!active.empty()) {
        std::uint32_t x = active.front();
        auto orb = H.orbit(x);
        std::set<std::uint32_t> orbset(orb.begin(), orb.end());
        bool covers = orbset.size() >= active.size();
        if (covers)
            for (auto p : active)
                if (!orbset.count(p)) { covers = false; break; }
        if (!covers) break;
        ++t;
        H = H.stabilizer(x);
        active.erase(active.begin());
    }
    return t;
}

/// Conjugacy classes as sorted element lists; classes ordered by their
/// lexicographically-smallest member, which is also the representative.
inline std::vector<std::vector<Perm>> conjugacy_classes(const PermGroup& G,
                                                        const Budget& budget = Budget::defaults()) {
    auto elems = G.elements(budget);
    std::sort(elems.begin(), elems.end());
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<char> seen(elems.size(), 0);
    std::vector<std::vector<Perm>> classes;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (seen[i]) continue;
        std::vector<Perm> cls{elems[i]};
        seen[i] = 1;
        for (std::size_t t = 0; t < cls.size(); ++t)
            for (const auto& g : G.generators()) {
                Perm c = g * cls[t] * g.inverse();
                std::size_t j = index.at(c);
                if (!seen[j]) {
                    seen[j] = 1;
                    cls.push_back(c);
                }
            }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

/// Smallest normal subgroup of G containing the seeds.
inline PermGroup normal_closure(const PermGroup& G, const std::vector<Perm>& seeds) {
    std::vector<Perm> gens;
    PermGroup K(G.degree(), {});
    std::vector<Perm> queue;
    auto add = [&](const Perm& p) {
        if (K.contains(p)) return;
        gens.push_back(p);
        K = PermGroup(G.degree(), gens);
        queue.push_back(p);
    };
    for (const auto& s : seeds) add(s);
    while (!queue.empty()) {
        Perm h = queue.back();
        queue.pop_back();
        for (const auto& g : G.generators()) add(g * h * g.inverse());
    }
    return K;
}

/// Derived subgroup as the normal closure of generator commutators,
/// with the repo-wide convention [x,y] = x y x^-1 y^-1.
inline PermGroup derived_subgroup(const PermGroup& G) {
    std::vector<Perm> comms;
    const auto& gens = G.generators();
    for (const auto& a : gens)
        for (const auto& b : gens)
            comms.push_back(a * b * a.inverse() * b.inverse());
    return normal_closure(G, comms);
}

inline bool is_perfect(const PermGroup& G) { return derived_subgroup(G).order() == G.order(); }

/// True iff the normal closure of every non-identity class representative
/// is the whole group.
inline bool is_simple(const PermGroup& G, const Budget& budget = Budget::defaults()) {
    if (G.order() == 1) return false;
    auto classes = conjugacy_classes(G, budget);
    for (const auto& cls : classes) {
        if (cls.front().is_identity()) continue;
        if (normal_closure(G, {cls.front()}).order() != G.order()) return false;
    }
    return true;
}

/// All normal subgroups of G (desk scale), as joins of normal closures of
/// conjugacy-class representatives; includes the trivial group and G.
inline std::vector<PermGroup> normal_subgroups(const PermGroup& G,
                                               const Budget& budget = Budget::defaults()) {
    auto classes = conjugacy_classes(G, budget);
    std::vector<PermGroup> found;
    std::vector<std::vector<Perm>> found_gens;
    auto known = [&](const PermGroup& N) {
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (found[i].order() != N.order()) continue;
            bool sub = true;
            for (const auto& g : N.generators())
                if (!found[i].contains(g)) { sub = false; break; }
            if (sub) return true;
        }
        return false;
    };
    found.push_back(PermGroup(G.degree(), {}));
    found_gens.push_back({});
    std::vector<PermGroup> atoms;
    for (const auto& cls : classes) {
        if (cls.front().is_identity()) continue;
        PermGroup N = normal_closure(G, {cls.front()});
        if (!known(N)) {
            found.push_back(N);
            found_gens.push_back(N.generators());
            atoms.push_back(N);
        }
    }
    // close under joins (a join of normal subgroups is normal)
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t count = found.size();
        for (std::size_t i = 1; i < count; ++i)
            for (const auto& atom : atoms) {
                if (found[i].order() == G.order()) continue;
                std::vector<Perm> gens = found_gens[i];
                gens.insert(gens.end(), atom.generators().begin(), atom.generators().end());
                PermGroup J(G.degree(), gens);
                if (!known(J)) {
                    found.push_back(J);
                    found_gens.push_back(gens);
                    grew = true;
                }
            }
    }
    return found;
}

/// All normal subgroups of the stabilizer G_x that act regularly on the rest
/// of the domain.
inline std::vector<PermGroup> regular_normal_subgroups(const PermGroup& G, std::uint32_t x,
                                                       const Budget& budget = Budget::defaults()) {
    if (!G.is_transitive()) throw std::invalid_argument("group must be transitive");
    PermGroup S = G.stabilizer(x);
    budget.require_group_order(S.order(), "regular_normal_subgroups");
    std::uint64_t target = G.degree() - 1;
    std::vector<PermGroup> out;
    for (auto& N : normal_subgroups(S, budget)) {
        if (N.order() != target) continue;
        std::uint32_t y = (x == 0) ? 1 : 0;
        if (N.orbit(y).size() == target) out.push_back(std::move(N));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Small-scale isomorphism testing
// ---------------------------------------------------------------------------

struct IsoResult {
    bool isomorphic = false;
    /// when isomorphic: words map gen_from[i] -> gen_to[i]
    std::vector<Perm> gen_from, gen_to;
    /// when not isomorphic: which invariant separated the groups
    std::string certificate;
};

namespace detail {

struct ClassProfile {
    // (element order, class size) -> count of classes
    std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, unsigned>> items;
    bool operator==(const ClassProfile& o) const { return items == o.items; }
};

inline ClassProfile class_profile(const std::vector<std::vector<Perm>>& classes) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, unsigned> m;
    for (const auto& cls : classes) m[{cls.front().order(), cls.size()}]++;
    ClassProfile p;
    for (auto& kv : m) p.items.push_back(kv);
    return p;
}

inline std::vector<std::uint64_t> derived_series_orders(const PermGroup& G) {
    std::vector<std::uint64_t> out{G.order()};
    PermGroup H = G;
    while (true) {
        PermGroup D = derived_subgroup(H);
        if (D.order() == H.order()) break;
        out.push_back(D.order());
        H = D;
        if (D.order() == 1) break;
    }
    return out;
}

inline Perm disjoint_union(const Perm& a, const Perm& b) {
    Perm out;
    out.img.reserve(a.degree() + b.degree());
    out.img = a.img;
    for (auto v : b.img) out.img.push_back(v + a.degree());
    return out;
}

} // namespace detail

/// Exact isomorphism test for groups within the desk limit. Screens with
/// invariants (order, class profile, derived series); when those agree,
/// backtracks on generator images. G gets a deterministic greedy generating
/// sequence g_1..g_m (each element strictly grows the generated subgroup);
/// the image of g_1 only needs to range over one representative per matching
/// H-class (composing with inner automorphisms of H is lossless), later
/// images sweep whole matching classes. A partial assignment is kept only
/// while the diagonal subgroup <(g_i, c_i)> of G x H on the disjoint union
/// of the domains has the same order as <g_1..g_i> in G — the subgroup is
/// then the graph of a partial isomorphism. Acceptance at depth m requires
/// order |G| and <c_1..c_m> = H, which certifies an isomorphism exactly.
/// The search space is exhausted on failure, so a negative answer with
/// matching invariants is also a certificate.
inline IsoResult iso_small(const PermGroup& G, const PermGroup& H,
                           const Budget& budget = Budget::defaults()) {
    IsoResult r;
    if (G.order() != H.order()) {
        r.certificate = "orders differ: " + std::to_string(G.order()) + " vs " +
                        std::to_string(H.order());
        return r;
    }
    if (G.order() == 1) {
        r.isomorphic = true;
        return r;
    }
    auto cg = conjugacy_classes(G, budget);
    auto ch = conjugacy_classes(H, budget);
    if (!(detail::class_profile(cg) == detail::class_profile(ch))) {
        r.certificate = "conjugacy class profiles (element order, class size) differ";
        return r;
    }
    if (detail::derived_series_orders(G) != detail::derived_series_orders(H)) {
        r.certificate = "derived series orders differ";
        return r;
    }

    // greedy deterministic generating sequence for G, seeded from the class
    // with the largest element order (smallest class breaks ties)
    auto class_rank = [](const std::vector<Perm>& cls) {
        return std::make_pair(cls.front().order(), ~cls.size());
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < cg.size(); ++i)
        if (class_rank(cg[i]) > class_rank(cg[best])) best = i;
    std::vector<Perm> gseq{cg[best].front()};
    PermGroup gen_so_far(G.degree(), gseq);
    std::vector<std::uint64_t> partial_orders{gen_so_far.order()};
    while (gen_so_far.order() < G.order()) {
        bool grew = false;
        for (const auto& cls : cg) {
            for (const auto& cand : cls) {
                if (gen_so_far.contains(cand)) continue;
                std::vector<Perm> next = gseq;
                next.push_back(cand);
                PermGroup bigger(G.degree(), next);
                if (bigger.order() > gen_so_far.order()) {
                    gseq = std::move(next);
                    gen_so_far = std::move(bigger);
                    partial_orders.push_back(gen_so_far.order());
                    grew = true;
                }
                break; // first non-member either grows or this class is useless here
            }
            if (grew) break;
        }
        if (!grew) throw std::logic_error("generating sequence construction stalled");
    }
    const std::size_t m = gseq.size();

    // class (order, size) signature of each g_i, plus pairwise word orders
    // used as cheap filters
    auto signature_of = [&](const Perm& g, const std::vector<std::vector<Perm>>& classes) {
        for (const auto& cls : classes)
            if (std::find(cls.begin(), cls.end(), g) != cls.end())
                return std::make_pair(cls.front().order(), (std::uint64_t)cls.size());
        throw std::logic_error("element not found in class list");
    };
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sig(m);
    for (std::size_t i = 0; i < m; ++i) sig[i] = signature_of(gseq[i], cg);

    std::vector<Perm> images(m);
    IsoResult found;
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
        if (i == m) {
            std::vector<Perm> hgens(images.begin(), images.end());
            if (PermGroup(H.degree(), hgens).order() != H.order()) return false;
            found.isomorphic = true;
            found.gen_from = gseq;
            found.gen_to = images;
            return true;
        }
        for (const auto& cls : ch) {
            if (cls.front().order() != sig[i].first || cls.size() != sig[i].second) continue;
            bool only_rep = (i == 0); // inner automorphisms fix the first image
            for (const auto& cand : cls) {
                // word filters against every earlier generator
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) {
                    if ((gseq[j] * gseq[i]).order() != (images[j] * cand).order()) ok = false;
                    else if ((gseq[j] * gseq[i] * gseq[j].inverse() * gseq[i].inverse()).order() !=
                             (images[j] * cand * images[j].inverse() * cand.inverse()).order())
                        ok = false;
                }
                if (ok) {
                    images[i] = cand;
                    std::vector<Perm> diag_gens;
                    for (std::size_t j = 0; j <= i; ++j)
                        diag_gens.push_back(detail::disjoint_union(gseq[j], images[j]));
                    PermGroup diag(G.degree() + H.degree(), diag_gens);
                    if (diag.order() == partial_orders[i] && dfs(i + 1)) return true;
                }
                if (only_rep) break;
            }
        }
        return false;
    };
    if (dfs(0)) return found;
    r.certificate = "generator-image search exhausted: no isomorphism exists";
    return r;
}

/// Soundness checks for a claimed isomorphism given by generator images:
/// order preservation on all words of length <= 3 over the generators and
/// their inverses, evaluated on both sides.
inline bool verify_iso_words(const std::vector<Perm>& from, const std::vector<Perm>& to,
                             unsigned deg_from, unsigned deg_to) {
    if (from.size() != to.size()) return false;
    std::vector<Perm> wf{Perm::identity(deg_from)}, wt{Perm::identity(deg_to)};
    std::vector<Perm> alph_f, alph_t;
    for (std::size_t i = 0; i < from.size(); ++i) {
        alph_f.push_back(from[i]);
        alph_f.push_back(from[i].inverse());
        alph_t.push_back(to[i]);
        alph_t.push_back(to[i].inverse());
    }
    std::size_t lo = 0;
    for (int len = 1; len <= 3; ++len) {
        std::size_t hi = wf.size();
        for (std::size_t w = lo; w < hi; ++w)
            for (std::size_t s = 0; s < alph_f.size(); ++s) {
                Perm nf = wf[w] * alph_f[s];
                Perm nt = wt[w] * alph_t[s];
                if (nf.order() != nt.order()) return false;
                wf.push_back(nf);
                wt.push_back(nt);
            }
        lo = hi;
    }
    return true;
}

/// Order oracle: plain closure under multiplication, no stabilizer chain.
/// Exponential memory; only for |G| <= a few thousand.
inline std::uint64_t brute_force_order(const std::vector<Perm>& gens, unsigned degree,
                                       std::uint64_t limit = 100000) {
    std::set<Perm> elems;
    std::vector<Perm> queue{Perm::identity(degree)};
    elems.insert(queue.front());
    while (!queue.empty()) {
        Perm g = queue.back();
        queue.pop_back();
        for (const auto& s : gens) {
            Perm h = s * g;
            if (elems.insert(h).second) {
                if (elems.size() > limit) throw budget_error("brute_force_order limit");
                queue.push_back(h);
            }
        }
    }
    return elems.size();
}

} // namespace geomforge
