#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/gf.hpp"
#include "geomforge/matvec.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geomforge {

/// D_{sigma,eps} = {c + c^sigma * eps : c in D} as a sorted code list.
inline std::vector<std::uint32_t> trace_group(const Gf& F, const FieldAuto& sigma,
                                              std::uint32_t eps) {
    std::set<std::uint32_t> out;
    for (std::uint32_t c = 0; c < F.q(); ++c) out.insert(F.add(c, F.mul(sigma(c), eps)));
    return {out.begin(), out.end()};
}

/// D^{sigma,eps} = {c in D : c^sigma * eps = c} as a sorted code list.
inline std::vector<std::uint32_t> fixed_group(const Gf& F, const FieldAuto& sigma,
                                              std::uint32_t eps) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < F.q(); ++c)
        if (F.mul(sigma(c), eps) == c) out.push_back(c);
    return out;
}

enum class LambdaTag { Zero, Trace, FixedSet, Full, Explicit };

/// Non-throwing validity report for a candidate form parameter
/// (sigma, eps, Lambda) over a finite field.
struct ParamCheckReport {
    bool eps_ok = false;            // eps^sigma * eps == 1
    bool sigma_sq_ok = false;       // a^(sigma^2) == eps^-1 a eps (== a, commutative)
    bool additive_ok = false;       // Lambda is an additive subgroup
    bool lower_ok = false;          // D_{sigma,-eps} subset of Lambda
    bool upper_ok = false;          // Lambda subset of D^{sigma,-eps}
    bool stable_ok = false;         // s^sigma Lambda s subset of Lambda for all s
    bool square_module_ok = true;   // char 2, sigma=id: Lambda closed under mult by squares
    bool zero_implication_ok = true; // Lambda=0 valid => sigma=id and eps=1
    std::vector<std::uint32_t> lower, upper; // the two trace groups
    bool valid() const {
        return eps_ok && sigma_sq_ok && additive_ok && lower_ok && upper_ok && stable_ok;
    }
};

inline ParamCheckReport form_parameter_check(const Gf& F, const FieldAuto& sigma,
                                             std::uint32_t eps,
                                             const std::vector<std::uint32_t>& lambda) {
    ParamCheckReport r;
    r.eps_ok = (F.mul(sigma(eps), eps) == 1);
    r.sigma_sq_ok = true;
    for (std::uint32_t a = 0; a < F.q() && r.sigma_sq_ok; ++a)
        if (sigma(sigma(a)) != a) r.sigma_sq_ok = false; // commutative: conjugation by eps is trivial
    std::set<std::uint32_t> L(lambda.begin(), lambda.end());
    r.additive_ok = L.count(0) > 0;
    for (auto a : L)
        for (auto b : L)
            if (!L.count(F.add(a, b))) r.additive_ok = false;
    std::uint32_t meps = F.neg(eps);
    r.lower.clear();
    for (std::uint32_t c = 0; c < F.q(); ++c) {
        std::uint32_t t = F.add(c, F.mul(sigma(c), meps)); // c - c^sigma eps
        if (!std::count(r.lower.begin(), r.lower.end(), t)) r.lower.push_back(t);
    }
    std::sort(r.lower.begin(), r.lower.end());
    r.upper = fixed_group(F, sigma, meps); // {c : c^sigma eps = -c}
    r.lower_ok = std::all_of(r.lower.begin(), r.lower.end(),
                             [&](std::uint32_t c) { return L.count(c) > 0; });
    r.upper_ok = std::all_of(L.begin(), L.end(), [&](std::uint32_t c) {
        return std::binary_search(r.upper.begin(), r.upper.end(), c);
    });
    r.stable_ok = true;
    for (std::uint32_t s = 0; s < F.q() && r.stable_ok; ++s)
        for (auto l : L)
            if (!L.count(F.mul(F.mul(sigma(s), l), s))) { r.stable_ok = false; break; }
    if (F.p() == 2 && sigma.is_identity()) {
        r.square_module_ok = true;
        for (std::uint32_t s = 0; s < F.q() && r.square_module_ok; ++s)
            for (auto l : L)
                if (!L.count(F.mul(F.mul(s, s), l))) { r.square_module_ok = false; break; }
    }
    if (L.size() == 1 && L.count(0) && r.valid())
        r.zero_implication_ok = sigma.is_identity() && eps == 1;
    return r;
}

/// Form parameter (sigma, eps, Lambda): an additive subgroup with
/// D_{sigma,-eps} <= Lambda <= D^{sigma,-eps}, stable under s^sigma Lambda s.
/// Carries a coset-representative table so pseudo-quadratic values in
/// D/Lambda have decidable equality (representative = smallest code).
class FormParameter {
public:
    FormParameter() = default;
    FormParameter(const FieldAuto& sigma, std::uint32_t eps, LambdaTag tag,
                  std::vector<std::uint32_t> explicit_lambda = {})
        : F_(&sigma.field()), sigma_(sigma), eps_(eps) {
        const Gf& F = *F_;
        std::uint32_t meps = F.neg(eps);
        switch (tag) {
            case LambdaTag::Zero: lambda_ = {0}; break;
            case LambdaTag::Trace: {
                std::set<std::uint32_t> s;
                for (std::uint32_t c = 0; c < F.q(); ++c)
                    s.insert(F.add(c, F.mul(sigma(c), meps)));
                lambda_.assign(s.begin(), s.end());
                break;
            }
            case LambdaTag::FixedSet: lambda_ = fixed_group(F, sigma, meps); break;
            case LambdaTag::Full:
                lambda_.resize(F.q());
                for (std::uint32_t c = 0; c < F.q(); ++c) lambda_[c] = c;
                break;
            case LambdaTag::Explicit:
                lambda_ = std::move(explicit_lambda);
                std::sort(lambda_.begin(), lambda_.end());
                lambda_.erase(std::unique(lambda_.begin(), lambda_.end()), lambda_.end());
                break;
        }
        auto report = form_parameter_check(F, sigma_, eps_, lambda_);
        if (!report.valid()) {
            std::string why;
            if (!report.eps_ok) why = "eps^sigma * eps != 1";
            else if (!report.sigma_sq_ok) why = "sigma^2 != conjugation by eps^-1";
            else if (!report.additive_ok) why = "Lambda is not an additive subgroup";
            else if (!report.lower_ok) why = "Lambda does not contain D_{sigma,-eps}";
            else if (!report.upper_ok) why = "Lambda not contained in D^{sigma,-eps}";
            else why = "Lambda not stable under s^sigma Lambda s";
            throw std::invalid_argument("invalid form parameter: " + why);
        }
        rep_.resize(F.q());
        for (std::uint32_t c = 0; c < F.q(); ++c) {
            std::uint32_t best = F.add(c, lambda_[0]);
            for (auto l : lambda_) best = std::min(best, F.add(c, l));
            rep_[c] = best;
        }
    }

    const Gf& field() const { return *F_; }
    const FieldAuto& sigma() const { return sigma_; }
    std::uint32_t eps() const { return eps_; }
    const std::vector<std::uint32_t>& lambda() const { return lambda_; }
    bool lambda_is_full() const { return lambda_.size() == F_->q(); }
    bool lambda_is_zero() const { return lambda_.size() == 1; }

    /// Smallest element of c + Lambda.
    std::uint32_t coset_rep(std::uint32_t c) const { return rep_[c]; }
    bool in_lambda(std::uint32_t c) const { return rep_[c] == rep_[0]; }

private:
    const Gf* F_ = nullptr;
    FieldAuto sigma_;
    std::uint32_t eps_ = 1;
    std::vector<std::uint32_t> lambda_;
    std::vector<std::uint32_t> rep_;
};

/// Sesquilinear form f(u,v) = u^(sigma T) * gram * v (sigma applied to the
/// left argument's coordinates).
class SesquilinearForm {
public:
    SesquilinearForm() = default;
    SesquilinearForm(const FieldAuto& sigma, FMat gram) : sigma_(sigma), gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram must be square");
    }

    const Gf& field() const { return gram_.field(); }
    const FieldAuto& sigma() const { return sigma_; }
    const FMat& gram() const { return gram_; }
    unsigned dim() const { return gram_.rows(); }

    std::uint32_t eval(std::uint64_t u, std::uint64_t v) const {
        const Gf& F = field();
        VSpace V(F, dim());
        std::uint32_t acc = 0;
        for (unsigned i = 0; i < dim(); ++i) {
            std::uint32_t ui = V.digit(u, i);
            if (!ui) continue;
            std::uint32_t su = sigma_(ui);
            for (unsigned j = 0; j < dim(); ++j) {
                std::uint32_t g = gram_.at(i, j);
                if (!g) continue;
                acc = F.add(acc, F.mul(F.mul(su, g), V.digit(v, j)));
            }
        }
        return acc;
    }

private:
    FieldAuto sigma_;
    FMat gram_;
};

/// h_f(u,v) = f(u,v) + f(v,u)^sigma eps; Gram H = G + sigma(G^T) eps.
/// Errors out when eps^sigma eps != 1 (no hermitian shape exists then).
inline FMat hermitianize(const SesquilinearForm& f, std::uint32_t eps) {
    const Gf& F = f.field();
    if (F.mul(f.sigma()(eps), eps) != 1)
        throw std::invalid_argument("hermitianize: eps^sigma * eps != 1");
    unsigned n = f.dim();
    FMat H(F, n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            H.at(i, j) = F.add(f.gram().at(i, j), F.mul(f.sigma()(f.gram().at(j, i)), eps));
    return H;
}

/// f(u,v)=0 iff f(v,u)=0 over every pair of vectors (exhausted; finite and
/// small by the desk-scale field limits).
inline bool is_reflexive(const SesquilinearForm& f, const Budget& budget = Budget::defaults()) {
    const Gf& F = f.field();
    VSpace V(F, f.dim());
    budget.require_enumeration(V.count() * V.count(), "is_reflexive");
    for (std::uint64_t u = 0; u < V.count(); ++u)
        for (std::uint64_t v = u + 1; v < V.count(); ++v) {
            bool uv = f.eval(u, v) == 0;
            bool vu = f.eval(v, u) == 0;
            if (uv != vu) return false;
        }
    return true;
}

/// Pseudo-quadratic form [f] = (q_f, h_f) determined by a sesquilinear
/// coset representative f and a form parameter. q_f(v) = f(v,v) + Lambda
/// with values as canonical coset representatives; h_f is carried as a Gram
/// matrix.
class PseudoQuadraticForm {
public:
    PseudoQuadraticForm() = default;
    PseudoQuadraticForm(SesquilinearForm f, FormParameter par)
        : f_(std::move(f)), par_(std::move(par)) {
        if (&f_.field() != &par_.field())
            throw std::invalid_argument("form/parameter field mismatch");
        if (!(f_.sigma() == par_.sigma()))
            throw std::invalid_argument("form/parameter sigma mismatch");
        h_ = hermitianize(f_, par_.eps());
    }

    const Gf& field() const { return f_.field(); }
    unsigned dim() const { return f_.dim(); }
    const SesquilinearForm& f() const { return f_; }
    const FormParameter& param() const { return par_; }
    const FMat& h_gram() const { return h_; }

    std::uint32_t h(std::uint64_t u, std::uint64_t v) const {
        const Gf& F = field();
        VSpace V(F, dim());
        std::uint32_t acc = 0;
        for (unsigned i = 0; i < dim(); ++i) {
            std::uint32_t ui = V.digit(u, i);
            if (!ui) continue;
            std::uint32_t su = par_.sigma()(ui);
            for (unsigned j = 0; j < dim(); ++j) {
                std::uint32_t g = h_.at(i, j);
                if (!g) continue;
                acc = F.add(acc, F.mul(F.mul(su, g), V.digit(v, j)));
            }
        }
        return acc;
    }

    /// Canonical representative of q_f(v) = f(v,v) + Lambda.
    std::uint32_t q_rep(std::uint64_t v) const { return par_.coset_rep(f_.eval(v, v)); }
    bool isotropic_vector(std::uint64_t v) const { return q_rep(v) == par_.coset_rep(0); }

    /// q_f and h_f vanish on the subspace; by biadditivity it is enough to
    /// check the canonical basis and its pairs.
    bool totally_isotropic(const Subspace& S) const {
        for (std::size_t i = 0; i < S.cols().size(); ++i) {
            if (!isotropic_vector(S.cols()[i])) return false;
            for (std::size_t j = i + 1; j < S.cols().size(); ++j)
                if (h(S.cols()[i], S.cols()[j]) != 0) return false;
        }
        return true;
    }

    /// V^perp of h_f.
    Subspace radical() const { return kernel(h_); }
    bool is_nondegenerate() const { return radical().dim() == 0; }

    /// Radical nonzero but free of q-zeros (characteristic-2 phenomenon).
    bool is_slightly_degenerate() const {
        Subspace rad = radical();
        if (rad.dim() == 0) return false;
        for (auto v : subspace_vectors(rad))
            if (v != 0 && isotropic_vector(v)) return false;
        return true;
    }

private:
    SesquilinearForm f_;
    FormParameter par_;
    FMat h_;
};

inline Subspace radical(const PseudoQuadraticForm& pq) { return pq.radical(); }
inline bool is_nondegenerate(const PseudoQuadraticForm& pq) { return pq.is_nondegenerate(); }
inline bool is_slightly_degenerate(const PseudoQuadraticForm& pq) {
    return pq.is_slightly_degenerate();
}

/// Scaling by s != 0: gram' = s*gram, eps' = s * s^-sigma * eps,
/// Lambda' = s*Lambda (sigma is unchanged over a commutative field, where
/// conjugation by s is trivial). Totally isotropic subspaces are unchanged
/// as sets.
inline PseudoQuadraticForm scale_form(const PseudoQuadraticForm& pq, std::uint32_t s) {
    const Gf& F = pq.field();
    if (s == 0) throw std::invalid_argument("scale_form: s = 0");
    const FieldAuto& sigma = pq.param().sigma();
    std::uint32_t eps2 = F.mul(F.mul(s, F.inv(sigma(s))), pq.param().eps());
    std::vector<std::uint32_t> lambda2;
    for (auto l : pq.param().lambda()) lambda2.push_back(F.mul(s, l));
    FormParameter par2(sigma, eps2, LambdaTag::Explicit, lambda2);
    return PseudoQuadraticForm(SesquilinearForm(sigma, pq.f().gram().scaled(s)), par2);
}

// ---------------------------------------------------------------------------
// Witt machinery
// ---------------------------------------------------------------------------

/// Totally isotropic 1-subspaces, in canonical enumeration order.
inline std::vector<Subspace> isotropic_points(const PseudoQuadraticForm& pq,
                                              const Budget& budget = Budget::defaults()) {
    std::vector<Subspace> out;
    if (pq.dim() == 0) return out;
    for (const auto& P : enumerate_grassmannian(pq.dim(), 1, pq.field(), budget))
        if (pq.totally_isotropic(P)) out.push_back(P);
    return out;
}

namespace detail {

/// Depth-first extension of totally isotropic subspaces with canonical-form
/// memoization; fn sees each totally isotropic subspace of dim >= 1 exactly
/// once.
inline void walk_isotropic(const PseudoQuadraticForm& pq, const Budget& budget,
                           const std::function<void(const Subspace&)>& fn) {
    auto pts = isotropic_points(pq, budget);
    std::set<Subspace> seen;
    Stopwatch clock(budget.time_ms);
    std::function<void(const Subspace&)> rec = [&](const Subspace& U) {
        fn(U);
        clock.poll("walk_isotropic");
        for (const auto& P : pts) {
            std::uint64_t gen = P.cols()[0];
            if (subspace_contains(U, gen)) continue;
            bool orth = true;
            for (auto c : U.cols())
                if (pq.h(c, gen) != 0) { orth = false; break; }
            if (!orth) continue;
            Subspace W = join(U, P);
            if (seen.insert(W).second) {
                budget.require_grassmannian(seen.size(), "walk_isotropic");
                rec(W);
            }
        }
    };
    for (const auto& P : pts)
        if (seen.insert(P).second) rec(P);
}

} // namespace detail

/// Largest dimension of a totally isotropic subspace (0 when there are no
/// isotropic points).
inline unsigned witt_index(const PseudoQuadraticForm& pq,
                           const Budget& budget = Budget::defaults()) {
    unsigned m = 0;
    detail::walk_isotropic(pq, budget,
                           [&](const Subspace& U) { m = std::max(m, U.dim()); });
    return m;
}

/// A witness subspace of the maximal dimension.
inline Subspace witt_index_witness(const PseudoQuadraticForm& pq,
                                   const Budget& budget = Budget::defaults()) {
    Subspace best = Subspace::zero(pq.field(), pq.dim());
    detail::walk_isotropic(pq, budget, [&](const Subspace& U) {
        if (U.dim() > best.dim()) best = U;
    });
    return best;
}

/// All totally isotropic k-subspaces, sorted canonically.
inline std::vector<Subspace> isotropic_grassmannian(const PseudoQuadraticForm& pq, unsigned k,
                                                    const Budget& budget = Budget::defaults()) {
    if (k == 0) return {Subspace::zero(pq.field(), pq.dim())};
    std::vector<Subspace> out;
    detail::walk_isotropic(pq, budget, [&](const Subspace& U) {
        if (U.dim() == k) out.push_back(U);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Hyperbolic pairs plus anisotropic kernel:
/// h(e_i, f_i) = 1, q(e_i) = q(f_i) = 0, the pairs are pairwise orthogonal,
/// V0 is orthogonal to every pair and carries no nonzero q-zero.
struct WittDecomposition {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    Subspace anisotropic; // V0 as a canonical subspace
    unsigned index = 0;
};

/// Greedy hyperbolic-pair extraction. Given an isotropic e and a partner w
/// with h(e,w) = t != 0:
///   w := w * t^-1                  (now h(e,w) = 1)
///   w := w - e * (q_rep(w) * eps^-1)
/// The second step absorbs q(w): q(w - e c) = q(w) + q(e(-c)) + h(w, e(-c))
/// = q(w) - c * h(w,e) = q(w) - c*eps mod Lambda, and c = q_rep(w) * eps^-1
/// cancels the representative exactly. Input must be non-degenerate.
inline WittDecomposition witt_decompose(const PseudoQuadraticForm& pq,
                                        const Budget& budget = Budget::defaults()) {
    if (!pq.is_nondegenerate())
        throw std::invalid_argument(
            pq.is_slightly_degenerate()
                ? "witt_decompose: slightly degenerate input (reduce first)"
                : "witt_decompose: degenerate input");
    const Gf& F = pq.field();
    unsigned n = pq.dim();
    VSpace V(F, n);
    WittDecomposition out;
    Subspace active = Subspace::full(F, n);
    while (true) {
        std::optional<std::uint64_t> e;
        for (auto v : subspace_vectors(active))
            if (v != 0 && pq.isotropic_vector(v)) { e = v; break; }
        if (!e) break;
        std::optional<std::uint64_t> w;
        for (auto v : subspace_vectors(active))
            if (pq.h(*e, v) != 0) { w = v; break; }
        if (!w) throw std::logic_error("isotropic vector with no partner in active part");
        std::uint32_t t = pq.h(*e, *w);
        std::uint64_t w1 = V.smul(*w, F.inv(t));
        std::uint32_t c = F.mul(pq.q_rep(w1), F.inv(pq.param().eps()));
        std::uint64_t w2 = V.add(w1, V.neg(V.smul(*e, c)));
        out.pairs.emplace_back(*e, w2);
        // restrict to the h-perp of the pair inside the active subspace
        FMat cond(F, 2, n);
        const FieldAuto& sigma = pq.param().sigma();
        for (unsigned j = 0; j < n; ++j) {
            std::uint32_t r1 = 0, r2 = 0;
            for (unsigned i = 0; i < n; ++i) {
                r1 = F.add(r1, F.mul(sigma(V.digit(*e, i)), pq.h_gram().at(i, j)));
                r2 = F.add(r2, F.mul(sigma(V.digit(w2, i)), pq.h_gram().at(i, j)));
            }
            cond.at(0, j) = r1;
            cond.at(1, j) = r2;
        }
        active = meet(active, kernel(cond));
        budget.require_enumeration(out.pairs.size(), "witt_decompose");
    }
    out.anisotropic = active;
    out.index = static_cast<unsigned>(out.pairs.size());
    for (auto v : subspace_vectors(active))
        if (v != 0 && pq.isotropic_vector(v))
            throw std::logic_error("anisotropic kernel has an isotropic vector");
    return out;
}

// ---------------------------------------------------------------------------
// Slightly degenerate reduction
// ---------------------------------------------------------------------------

struct ReducedForm {
    PseudoQuadraticForm reduced; // on V' = V / rad, dim n - r
    Subspace rad;                // radical of the input
    FMat lift;                   // n x (n-r): complement basis into V
    FMat proj;                   // (n-r) x n: quotient coordinates
};

/// Quotient by the radical with the enlarged parameter
/// Lambda' = {c : c + Lambda in q_f(rad)}; the induced map is a bijection
/// on totally isotropic subspaces (tested by counting).
inline ReducedForm reduce_slightly_degenerate(const PseudoQuadraticForm& pq) {
    if (!pq.is_slightly_degenerate())
        throw std::invalid_argument("reduce_slightly_degenerate: input is not slightly degenerate");
    const Gf& F = pq.field();
    unsigned n = pq.dim();
    VSpace V(F, n);
    Subspace rad = pq.radical();
    unsigned r = rad.dim();
    // complement: standard basis vectors that extend the radical to V
    std::vector<std::uint64_t> basis = rad.cols();
    std::vector<std::uint64_t> comp;
    for (unsigned i = 0; i < n && basis.size() < n; ++i) {
        std::uint64_t cand = V.basis_vector(i);
        std::vector<std::uint64_t> trial = basis;
        trial.push_back(cand);
        if (span_of_columns(F, n, trial).dim() > basis.size()) {
            basis.push_back(cand);
            comp.push_back(cand);
        }
    }
    unsigned n2 = n - r;
    FMat L(F, n, n2);
    for (unsigned c = 0; c < n2; ++c)
        for (unsigned row = 0; row < n; ++row) L.at(row, c) = V.digit(comp[c], row);
    // projection: v = [rad | comp] * (x; y) -> y
    FMat M(F, n, n);
    for (unsigned c = 0; c < r; ++c)
        for (unsigned row = 0; row < n; ++row) M.at(row, c) = V.digit(rad.cols()[c], row);
    for (unsigned c = 0; c < n2; ++c)
        for (unsigned row = 0; row < n; ++row) M.at(row, r + c) = V.digit(comp[c], row);
    FMat Minv = M.inverse();
    FMat P(F, n2, n);
    for (unsigned row = 0; row < n2; ++row)
        for (unsigned col = 0; col < n; ++col) P.at(row, col) = Minv.at(r + row, col);
    // Lambda' = union of cosets q_f(w) + Lambda over w in rad
    std::set<std::uint32_t> lam2;
    for (auto w : subspace_vectors(rad)) {
        std::uint32_t qv = pq.f().eval(w, w);
        for (auto l : pq.param().lambda()) lam2.insert(F.add(qv, l));
    }
    FormParameter par2(pq.param().sigma(), pq.param().eps(), LambdaTag::Explicit,
                       std::vector<std::uint32_t>(lam2.begin(), lam2.end()));
    FMat G2 = L.map(pq.param().sigma()).transpose() * pq.f().gram() * L;
    ReducedForm out{PseudoQuadraticForm(SesquilinearForm(pq.param().sigma(), G2), par2), rad, L,
                    P};
    return out;
}

/// Image of a totally isotropic subspace of V under the quotient map; the
/// map is dimension-preserving on such subspaces (they meet the radical
/// trivially).
inline Subspace reduce_subspace(const ReducedForm& red, const Subspace& U) {
    Subspace img = apply_matrix(red.proj, U);
    if (img.dim() != U.dim())
        throw std::invalid_argument("reduce_subspace: subspace meets the radical");
    return img;
}

// ---------------------------------------------------------------------------
// Five-way classification
// ---------------------------------------------------------------------------

enum class FormCase {
    Symplectic,
    Orthogonal,
    DefectiveOrthogonal,
    ClassicalUnitary,
    RestrictedUnitary,
};

inline const char* form_case_name(FormCase c) {
    switch (c) {
        case FormCase::Symplectic: return "symplectic";
        case FormCase::Orthogonal: return "orthogonal";
        case FormCase::DefectiveOrthogonal: return "defective-orthogonal";
        case FormCase::ClassicalUnitary: return "classical-unitary";
        case FormCase::RestrictedUnitary: return "restricted-unitary";
    }
    return "?";
}

struct ClassifyReport {
    bool ok = false;
    FormCase kind = FormCase::Orthogonal;
    std::string detail; // reason when !ok; normalization notes when ok
    std::vector<std::uint32_t> lambda; // resolved Lambda after normalization
};

/// Classifies a scaling-normalized (sigma, eps, Lambda) over a finite field.
/// If eps != 1 with sigma != id, a normalizing scale factor is searched for
/// first. The two cases that cannot occur over finite fields (defective
/// orthogonal needs an imperfect field, restricted unitary a non-commutative
/// skew field) are reported as impossible rather than returned.
inline ClassifyReport classify_form_case(const Gf& F, const FieldAuto& sigma, std::uint32_t eps,
                                         const std::vector<std::uint32_t>& lambda) {
    ClassifyReport r;
    auto check = form_parameter_check(F, sigma, eps, lambda);
    r.lambda = lambda;
    if (sigma.is_identity()) {
        if (!check.valid()) {
            bool middle = lambda.size() > 1 && lambda.size() < F.q();
            if (middle && F.p() == 2 && eps == 1) {
                r.kind = FormCase::DefectiveOrthogonal;
                r.detail = "defective-orthogonal shape (sigma=id, 0 != Lambda != D) is impossible "
                           "over a finite field: finite fields are perfect, so a D^2-submodule is "
                           "0 or D";
            } else {
                r.detail = "invalid form parameter";
            }
            return r;
        }
        if (lambda.size() == F.q()) {
            if (eps != F.minus_one()) {
                r.detail = "Lambda = D requires eps = -1";
                return r;
            }
            r.ok = true;
            r.kind = FormCase::Symplectic;
            return r;
        }
        if (lambda.size() == 1) {
            if (eps != 1) {
                r.detail = "Lambda = 0 requires eps = 1";
                return r;
            }
            r.ok = true;
            r.kind = FormCase::Orthogonal;
            return r;
        }
        r.kind = FormCase::DefectiveOrthogonal;
        r.detail = "impossible over finite (perfect) fields";
        return r;
    }
    // sigma != id: normalize eps to 1 by scaling if needed
    std::uint32_t s_used = 1;
    std::uint32_t eps_n = eps;
    std::vector<std::uint32_t> lambda_n = lambda;
    if (eps != 1) {
        bool found = false;
        for (std::uint32_t s = 1; s < F.q(); ++s)
            if (F.mul(F.mul(s, F.inv(sigma(s))), eps) == 1) {
                s_used = s;
                found = true;
                break;
            }
        if (!found) {
            r.detail = "no scaling normalizes eps to 1";
            return r;
        }
        eps_n = 1;
        for (auto& l : lambda_n) l = F.mul(s_used, l);
        std::sort(lambda_n.begin(), lambda_n.end());
        r.detail = "normalized by scaling with s=" + std::to_string(s_used);
    }
    auto check_n = form_parameter_check(F, sigma, eps_n, lambda_n);
    r.lambda = lambda_n;
    if (lambda_n != check_n.upper) {
        r.kind = FormCase::RestrictedUnitary;
        r.detail = "restricted-unitary shape (Lambda < D^{sigma,-1}) is impossible over a finite "
                   "field: the only form parameter is the fixed field itself";
        return r;
    }
    if (!check_n.valid()) {
        r.detail = "invalid form parameter after normalization";
        return r;
    }
    r.ok = true;
    r.kind = FormCase::ClassicalUnitary;
    return r;
}

} // namespace geomforge
