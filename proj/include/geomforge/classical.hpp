#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/forms.hpp"
#include "geomforge/matvec.hpp"
#include "geomforge/permgroup.hpp"
#include "geomforge/projgeom.hpp"
#include "geomforge/qmat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geomforge {

// ---------------------------------------------------------------------------
// Transvections
// ---------------------------------------------------------------------------

/// tau = id + u*rho with rho(u) = 0: fixes the hyperplane ker(rho) pointwise
/// and the point uD linewise.
struct Transvection {
    FMat matrix;
    Subspace center; // uD
    Subspace axis;   // ker(rho)
};

inline Transvection transvection(const Gf& F, const std::vector<std::uint32_t>& u,
                                 const std::vector<std::uint32_t>& rho) {
    unsigned n = static_cast<unsigned>(u.size());
    if (rho.size() != n) throw std::invalid_argument("transvection: dimension mismatch");
    std::uint32_t pairing = 0;
    for (unsigned i = 0; i < n; ++i) pairing = F.add(pairing, F.mul(rho[i], u[i]));
    if (pairing != 0) throw std::invalid_argument("transvection requires rho(u) = 0");
    FMat m = FMat::identity(F, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = F.add(m.at(i, j), F.mul(u[i], rho[j]));
    Transvection t;
    t.matrix = m;
    VSpace V(F, n);
    bool u_zero = std::all_of(u.begin(), u.end(), [](std::uint32_t x) { return x == 0; });
    t.center = u_zero ? Subspace::zero(F, n) : span_of_columns(F, n, {V.encode(u)});
    FMat row(F, 1, n);
    for (unsigned j = 0; j < n; ++j) row.at(0, j) = rho[j];
    t.axis = kernel(row);
    return t;
}

/// The elementary matrix tau_ij(a): 1s on the diagonal and a at (i, j).
inline FMat elementary_transvection(const Gf& F, unsigned n, unsigned i, unsigned j,
                                    std::uint32_t a) {
    if (i == j) throw std::invalid_argument("elementary transvection needs i != j");
    FMat m = FMat::identity(F, n);
    m.at(i, j) = a;
    return m;
}

/// Both booleans of the commuting-transvections criterion; they agree on
/// every pair of non-trivial transvections.
inline std::pair<bool, bool> transvections_commute_iff(const Transvection& a,
                                                       const Transvection& b) {
    if (a.matrix == FMat::identity(a.matrix.field(), a.matrix.rows()) ||
        b.matrix == FMat::identity(b.matrix.field(), b.matrix.rows()))
        throw std::invalid_argument("commuting criterion needs non-trivial transvections");
    bool commute = (a.matrix * b.matrix == b.matrix * a.matrix);
    bool geom = (a.center == b.center) || (a.axis == b.axis);
    return {commute, geom};
}

// ---------------------------------------------------------------------------
// Linear groups as permutation groups
// ---------------------------------------------------------------------------

/// Matrix generators plus the induced permutation actions on the canonical
/// point / hyperplane / nonzero-vector enumerations. The point action is
/// the projective (little projective / projective linear) group; the vector
/// action is faithful.
struct LinearGroup {
    const Gf* F = nullptr;
    unsigned dim = 0;
    std::vector<FMat> matrix_gens;
    std::vector<Subspace> points;
    std::vector<Subspace> hyperplanes;
    PermGroup on_points;
    PermGroup on_vectors;
    PermGroup on_hyperplanes;
};

namespace detail {

inline Perm perm_on_subspaces(const FMat& g, const std::vector<Subspace>& list,
                              const std::map<Subspace, std::uint32_t>& index) {
    Perm p;
    p.img.resize(list.size());
    for (std::size_t i = 0; i < list.size(); ++i)
        p.img[i] = index.at(apply_matrix(g, list[i]));
    return p;
}

inline Perm perm_on_vectors(const FMat& g) {
    const Gf& F = g.field();
    VSpace V(F, g.rows());
    Perm p;
    p.img.resize(V.count() - 1);
    for (std::uint64_t v = 1; v < V.count(); ++v)
        p.img[v - 1] = static_cast<std::uint32_t>(V.apply(g, v) - 1);
    return p;
}

inline LinearGroup make_linear_group(const Gf& F, unsigned dim, std::vector<FMat> gens,
                                     const Budget& budget) {
    LinearGroup out;
    out.F = &F;
    out.dim = dim;
    out.matrix_gens = std::move(gens);
    out.points = enumerate_grassmannian(dim, 1, F, budget);
    out.hyperplanes = enumerate_grassmannian(dim, dim - 1, F, budget);
    std::map<Subspace, std::uint32_t> pidx, hidx;
    for (std::size_t i = 0; i < out.points.size(); ++i)
        pidx[out.points[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < out.hyperplanes.size(); ++i)
        hidx[out.hyperplanes[i]] = static_cast<std::uint32_t>(i);
    std::vector<Perm> pp, vp, hp;
    for (const auto& g : out.matrix_gens) {
        pp.push_back(perm_on_subspaces(g, out.points, pidx));
        vp.push_back(perm_on_vectors(g));
        hp.push_back(perm_on_subspaces(g, out.hyperplanes, hidx));
    }
    out.on_points = PermGroup(static_cast<unsigned>(out.points.size()), pp);
    VSpace V(F, dim);
    out.on_vectors = PermGroup(static_cast<unsigned>(V.count() - 1), vp);
    out.on_hyperplanes = PermGroup(static_cast<unsigned>(out.hyperplanes.size()), hp);
    return out;
}

/// Additive basis of GF(p^k): the monomial codes 1, p, p^2, ...
inline std::vector<std::uint32_t> additive_basis(const Gf& F) {
    std::vector<std::uint32_t> out;
    std::uint32_t c = 1;
    for (unsigned e = 0; e < F.k(); ++e) {
        out.push_back(c);
        c *= F.p();
    }
    return out;
}

} // namespace detail

/// EL(V) = group generated by the elementary transvections tau_ij(a), a over
/// an additive basis of the field; equals SL(V) over these commutative
/// coefficients.
inline LinearGroup build_el(unsigned dim, const Gf& F, const Budget& budget = Budget::defaults()) {
    if (dim < 2) throw std::invalid_argument("build_el: dimension must be >= 2");
    std::vector<FMat> gens;
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = 0; j < dim; ++j) {
            if (i == j) continue;
            for (auto a : detail::additive_basis(F))
                gens.push_back(elementary_transvection(F, dim, i, j, a));
        }
    return detail::make_linear_group(F, dim, std::move(gens), budget);
}

/// GL(V) = H * EL(V): the elementary generators plus diag(g, 1, .., 1) for a
/// primitive g.
inline LinearGroup build_gl(unsigned dim, const Gf& F, const Budget& budget = Budget::defaults()) {
    LinearGroup el = build_el(dim, F, budget);
    if (F.q() == 2) return el; // GL = SL = EL over GF(2)
    std::vector<FMat> gens = el.matrix_gens;
    FMat h = FMat::identity(F, dim);
    h.at(0, 0) = F.primitive_element();
    gens.push_back(h);
    return detail::make_linear_group(F, dim, std::move(gens), budget);
}

// ---------------------------------------------------------------------------
// Steinberg relations
// ---------------------------------------------------------------------------

/// SR1: tau_ij(a) tau_ij(b) = tau_ij(a+b).
/// SR2: [tau_ij(a), tau_kl(b)] = 1 whenever j != k and i != l.
/// SR3: [tau_ij(a), tau_jk(b)] = tau_ik(ab) for i, j, k pairwise distinct.
/// The commutator convention is [x,y] = x y x^-1 y^-1 repo-wide; the report
/// records the product order that SR3 actually satisfied.
struct SteinbergReport {
    bool sr1 = true, sr2 = true, sr3 = true;
    std::uint64_t checked = 0;
    std::string convention;
    bool all() const { return sr1 && sr2 && sr3; }
};

inline SteinbergReport check_steinberg_field(unsigned n, const Gf& F) {
    if (n < 3) throw std::invalid_argument("Steinberg relations need n >= 3");
    SteinbergReport r;
    auto tau = [&](unsigned i, unsigned j, std::uint32_t a) {
        return elementary_transvection(F, n, i, j, a);
    };
    FMat id = FMat::identity(F, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::uint32_t a = 0; a < F.q(); ++a)
                for (std::uint32_t b = 0; b < F.q(); ++b) {
                    if (tau(i, j, a) * tau(i, j, b) != tau(i, j, F.add(a, b))) r.sr1 = false;
                    ++r.checked;
                }
        }
    auto comm = [&](const FMat& x, const FMat& y) {
        return x * y * x.inverse() * y.inverse();
    };
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k)
                for (unsigned l = 0; l < n; ++l) {
                    if (i == j || k == l) continue;
                    if (j == k || i == l) continue; // SR3 territory
                    for (std::uint32_t a = 1; a < F.q(); ++a)
                        for (std::uint32_t b = 1; b < F.q(); ++b) {
                            if (comm(tau(i, j, a), tau(k, l, b)) != id) r.sr2 = false;
                            ++r.checked;
                        }
                }
    bool plus_ok = true, minus_ok = true;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                for (std::uint32_t a = 1; a < F.q(); ++a)
                    for (std::uint32_t b = 1; b < F.q(); ++b) {
                        FMat c = comm(tau(i, j, a), tau(j, k, b));
                        if (c != tau(i, k, F.mul(a, b))) plus_ok = false;
                        if (c != tau(i, k, F.neg(F.mul(a, b)))) minus_ok = false;
                        ++r.checked;
                    }
            }
    r.sr3 = plus_ok;
    if (plus_ok && minus_ok)
        r.convention = "[t_ij(a), t_jk(b)] = t_ik(ab) (= t_ik(-ab); characteristic 2)";
    else if (plus_ok)
        r.convention = "[t_ij(a), t_jk(b)] = t_ik(ab)";
    else if (minus_ok)
        r.convention = "[t_ij(a), t_jk(b)] = t_ik(-ab)";
    else
        r.convention = "no uniform sign";
    return r;
}

inline SteinbergReport check_steinberg_quat(unsigned n, unsigned samples,
                                            std::uint64_t seed = 20260809) {
    if (n < 3) throw std::invalid_argument("Steinberg relations need n >= 3");
    SteinbergReport r;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-5, 5);
    std::uniform_int_distribution<unsigned> den(1, 4);
    auto rquat = [&]() { return Quat(Rat(d(rng), den(rng)), Rat(d(rng), den(rng)),
                                     Rat(d(rng), den(rng)), Rat(d(rng), den(rng))); };
    auto tau = [&](unsigned i, unsigned j, const Quat& a) {
        QMat m = QMat::identity(n);
        m.at(i, j) = a;
        return m;
    };
    auto tau_inv = [&](unsigned i, unsigned j, const Quat& a) { return tau(i, j, -a); };
    bool order_ab = true, order_ba_differs = false;
    for (unsigned t = 0; t < samples; ++t) {
        Quat a = rquat(), b = rquat();
        unsigned i = rng() % n, j = rng() % n, k = rng() % n;
        while (j == i) j = rng() % n;
        while (k == i || k == j) k = rng() % n;
        // SR1
        if (tau(i, j, a) * tau(i, j, b) != tau(i, j, a + b)) r.sr1 = false;
        // SR2 with a disjoint second pair when n >= 4, else a (k,i)-free one
        unsigned l = k;
        if (n >= 4) {
            l = rng() % n;
            while (l == i || l == j || l == k) l = rng() % n;
            QMat c = tau(i, j, a) * tau(k, l, b) * tau_inv(i, j, a) * tau_inv(k, l, b);
            if (c != QMat::identity(n)) r.sr2 = false;
        } else {
            QMat c = tau(i, j, a) * tau(k, j, b) * tau_inv(i, j, a) * tau_inv(k, j, b);
            if (c != QMat::identity(n)) r.sr2 = false;
        }
        // SR3: the product must be ab, in that order
        QMat c = tau(i, j, a) * tau(j, k, b) * tau_inv(i, j, a) * tau_inv(j, k, b);
        if (c != tau(i, k, a * b)) order_ab = false;
        if (a * b != b * a && c != tau(i, k, b * a)) order_ba_differs = true;
        r.checked += 3;
    }
    r.sr3 = order_ab;
    r.convention = order_ab
                       ? (order_ba_differs
                              ? "[t_ij(a), t_jk(b)] = t_ik(ab); ba is distinguished (ab != ba seen)"
                              : "[t_ij(a), t_jk(b)] = t_ik(ab)")
                       : "order convention violated";
    return r;
}

// ---------------------------------------------------------------------------
// Dieudonne determinant over a field
// ---------------------------------------------------------------------------

/// Over these commutative coefficients the pivot-product class is the
/// ordinary determinant exactly; singular input is an error.
inline std::uint32_t dieudonne_det(const FMat& M) {
    std::uint32_t d = M.det();
    if (d == 0) throw std::domain_error("singular matrix has no Dieudonne determinant");
    return d;
}

// ---------------------------------------------------------------------------
// Unitary (isometry) groups by exhaustive search
// ---------------------------------------------------------------------------

struct UnitaryGroup {
    std::vector<FMat> elements;
    std::vector<Subspace> iso_points;
    PermGroup on_isotropic_points;
};

/// All g in GL(V) with g*[f] = [f]: q_f preserved modulo Lambda and h_f
/// preserved exactly. Exhaustive depth-first search over column images
/// constrained by the q/h values of the standard basis (every leaf is an
/// isometry and every isometry is a leaf). Refuses when |GL(V)| exceeds the
/// enumeration budget, per the desk-scale contract.
inline UnitaryGroup build_unitary(const PseudoQuadraticForm& pq,
                                  const Budget& budget = Budget::defaults()) {
    const Gf& F = pq.field();
    unsigned n = pq.dim();
    budget.require_enumeration(gl_order(n, F.q()), "build_unitary");
    VSpace V(F, n);
    std::vector<std::uint32_t> qb(n);
    FMat hb(F, n, n);
    for (unsigned i = 0; i < n; ++i) {
        qb[i] = pq.q_rep(V.basis_vector(i));
        for (unsigned j = 0; j < n; ++j) hb.at(i, j) = pq.h(V.basis_vector(i), V.basis_vector(j));
    }
    UnitaryGroup out;
    Stopwatch clock(budget.time_ms);
    std::vector<std::uint64_t> cols(n);
    std::vector<char> in_span(V.count(), 0);
    std::vector<std::uint64_t> span_list{0};
    in_span[0] = 1;
    std::function<void(unsigned)> rec = [&](unsigned j) {
        if (j == n) {
            FMat g(F, n, n);
            for (unsigned c = 0; c < n; ++c)
                for (unsigned r = 0; r < n; ++r) g.at(r, c) = V.digit(cols[c], r);
            out.elements.push_back(g);
            budget.require_group_order(out.elements.size(), "build_unitary");
            return;
        }
        clock.poll("build_unitary");
        for (std::uint64_t v = 1; v < V.count(); ++v) {
            if (in_span[v]) continue;
            if (pq.q_rep(v) != qb[j]) continue;
            bool ok = true;
            for (unsigned i = 0; i < j && ok; ++i)
                if (pq.h(cols[i], v) != hb.at(i, j)) ok = false;
            if (!ok) continue;
            cols[j] = v;
            std::size_t base = span_list.size();
            for (std::size_t t = 0; t < base; ++t)
                for (std::uint32_t a = 1; a < F.q(); ++a) {
                    std::uint64_t w = V.add(span_list[t], V.smul(v, a));
                    if (!in_span[w]) {
                        in_span[w] = 1;
                        span_list.push_back(w);
                    }
                }
            rec(j + 1);
            while (span_list.size() > base) {
                in_span[span_list.back()] = 0;
                span_list.pop_back();
            }
        }
    };
    rec(0);
    out.iso_points = isotropic_points(pq, budget);
    std::map<Subspace, std::uint32_t> idx;
    for (std::size_t i = 0; i < out.iso_points.size(); ++i)
        idx[out.iso_points[i]] = static_cast<std::uint32_t>(i);
    std::vector<Perm> perms;
    for (const auto& g : out.elements)
        perms.push_back(detail::perm_on_subspaces(g, out.iso_points, idx));
    out.on_isotropic_points =
        PermGroup(static_cast<unsigned>(out.iso_points.size()), perms);
    return out;
}

// ---------------------------------------------------------------------------
// Line reconstruction from a 2-transitive action
// ---------------------------------------------------------------------------

/// For a fixed point pair, among the orbits of the two-point stabilizer
/// exactly one (for a projective action) has a trivial pointwise stabilizer
/// in the whole group; the line through the pair is the complement of that
/// orbit, and the full line set is its orbit under the group.
inline PointLineGeometry reconstruct_lines(const PermGroup& G,
                                           const Budget& budget = Budget::defaults()) {
    if (G.degree() < 3 || transitivity_degree(G) < 2)
        throw std::invalid_argument("reconstruct_lines: action is not 2-transitive");
    PermGroup S = G.pointwise_stabilizer({0, 1});
    auto orbits = S.orbits();
    std::vector<std::vector<std::uint32_t>> qualifying;
    for (const auto& orb : orbits) {
        if (G.pointwise_stabilizer(orb).is_trivial()) qualifying.push_back(orb);
    }
    if (qualifying.size() != 1)
        throw std::invalid_argument(
            "reconstruct_lines: " + std::to_string(qualifying.size()) +
            " orbits have a trivial pointwise stabilizer; the action is not projective");
    std::set<std::uint32_t> X(qualifying[0].begin(), qualifying[0].end());
    std::vector<std::uint32_t> line;
    for (std::uint32_t p = 0; p < G.degree(); ++p)
        if (!X.count(p)) line.push_back(p);
    if (line.size() < 3)
        throw std::invalid_argument("reconstruct_lines: candidate line has fewer than 3 points");
    std::set<std::vector<std::uint32_t>> lines{line};
    std::vector<std::vector<std::uint32_t>> queue{line};
    while (!queue.empty()) {
        auto L = queue.back();
        queue.pop_back();
        for (const auto& g : G.generators()) {
            std::vector<std::uint32_t> img;
            img.reserve(L.size());
            for (auto p : L) img.push_back(g(p));
            std::sort(img.begin(), img.end());
            if (lines.insert(img).second) {
                budget.require_enumeration(lines.size(), "reconstruct_lines");
                queue.push_back(img);
            }
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
    std::uint32_t lid = 0;
    for (const auto& L : lines) {
        for (auto p : L) inc.emplace_back(p, lid);
        ++lid;
    }
    return PointLineGeometry(G.degree(), static_cast<unsigned>(lines.size()), inc);
}

// ---------------------------------------------------------------------------
// Moufang sets on the projective line
// ---------------------------------------------------------------------------

enum class MoufangLevel { EL, GL };

struct MoufangSetData {
    PermGroup G;
    PermGroup U;
    std::uint32_t x = 0; // the point U fixes
};

/// The projective line Gr_1(F^2) as D u {infinity}; U is the translation
/// group x -> x + t realized by the upper unitriangular matrices, fixing
/// the point (1,0)D.
inline MoufangSetData moufang_set_projective_line(const Gf& F, MoufangLevel level,
                                                  const Budget& budget = Budget::defaults()) {
    LinearGroup lg = (level == MoufangLevel::EL) ? build_el(2, F, budget) : build_gl(2, F, budget);
    std::map<Subspace, std::uint32_t> idx;
    for (std::size_t i = 0; i < lg.points.size(); ++i)
        idx[lg.points[i]] = static_cast<std::uint32_t>(i);
    std::vector<Perm> ugens;
    for (auto t : detail::additive_basis(F)) {
        FMat m = FMat::identity(F, 2);
        m.at(0, 1) = t;
        ugens.push_back(detail::perm_on_subspaces(m, lg.points, idx));
    }
    MoufangSetData ms;
    ms.U = PermGroup(static_cast<unsigned>(lg.points.size()), ugens);
    ms.G = lg.on_points;
    // the unique common fixed point of the translation group
    std::optional<std::uint32_t> fixed;
    for (std::uint32_t p = 0; p < ms.U.degree(); ++p) {
        bool f = true;
        for (const auto& g : ms.U.generators())
            if (g(p) != p) { f = false; break; }
        if (f) {
            if (fixed) throw std::logic_error("translation group fixes two points");
            fixed = p;
        }
    }
    if (!fixed) throw std::logic_error("translation group fixes no point");
    ms.x = *fixed;
    return ms;
}

struct MoufangReport {
    bool ms1 = false, ms2 = false, ms3 = false;
    std::uint64_t u_order = 0;
    bool sharply_2transitive = false; // U = G_x
    bool all() const { return ms1 && ms2 && ms3; }
};

inline MoufangReport check_moufang(const MoufangSetData& ms,
                                   const Budget& budget = Budget::defaults()) {
    (void)budget;
    MoufangReport r;
    r.ms1 = transitivity_degree(ms.G) >= 2;
    r.u_order = ms.U.order();
    bool fixes = true;
    for (const auto& g : ms.U.generators())
        if (g(ms.x) != ms.x) fixes = false;
    std::uint32_t y = (ms.x == 0) ? 1 : 0;
    r.ms2 = fixes && r.u_order == ms.G.degree() - 1 &&
            ms.U.orbit(y).size() == ms.G.degree() - 1;
    PermGroup Gx = ms.G.stabilizer(ms.x);
    bool normal = true;
    for (const auto& s : Gx.generators())
        for (const auto& u : ms.U.generators())
            if (!ms.U.contains(s * u * s.inverse())) normal = false;
    r.ms3 = normal;
    r.sharply_2transitive = (Gx.order() == r.u_order);
    return r;
}

} // namespace geomforge
