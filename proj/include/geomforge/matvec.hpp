#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/gf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomforge {

/// Dense matrix over a finite field; entries are element codes, row-major.
/// Convention: vectors are columns, matrices act from the left, scalars act
/// on the right (immaterial over these commutative fields, but the echelon
/// code keeps the right-span discipline so the conventions match the
/// quaternion side).
class FMat {
public:
    FMat() : F_(nullptr), rows_(0), cols_(0) {}
    FMat(const Gf& F, unsigned rows, unsigned cols)
        : F_(&F), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, 0) {}

    static FMat identity(const Gf& F, unsigned n) {
        FMat m(F, n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const Gf& field() const { return *F_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    std::uint32_t& at(unsigned r, unsigned c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint32_t at(unsigned r, unsigned c) const {
        return e_[static_cast<std::size_t>(r) * cols_ + c];
    }

    friend FMat operator*(const FMat& a, const FMat& b) {
        if (a.F_ != b.F_ || a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        const Gf& F = *a.F_;
        FMat out(F, a.rows_, b.cols_);
        for (unsigned i = 0; i < a.rows_; ++i)
            for (unsigned k = 0; k < a.cols_; ++k) {
                std::uint32_t aik = a.at(i, k);
                if (!aik) continue;
                for (unsigned j = 0; j < b.cols_; ++j)
                    out.at(i, j) = F.add(out.at(i, j), F.mul(aik, b.at(k, j)));
            }
        return out;
    }
    friend FMat operator+(const FMat& a, const FMat& b) {
        if (a.F_ != b.F_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        FMat out(a.field(), a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.F_->add(a.e_[i], b.e_[i]);
        return out;
    }
    friend bool operator==(const FMat& a, const FMat& b) {
        return a.F_ == b.F_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const FMat& a, const FMat& b) { return !(a == b); }
    bool operator<(const FMat& o) const { return e_ < o.e_; }

    FMat transpose() const {
        FMat out(*F_, cols_, rows_);
        for (unsigned r = 0; r < rows_; ++r)
            for (unsigned c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    FMat map(const FieldAuto& sigma) const {
        FMat out(*F_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = sigma(e_[i]);
        return out;
    }

    FMat scaled(std::uint32_t s) const {
        FMat out(*F_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = F_->mul(s, e_[i]);
        return out;
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](std::uint32_t x) { return x == 0; });
    }

    /// Determinant by elimination; rows are only ever replaced by
    /// row + multiple-of-other-row, so the diagonal product of the resulting
    /// triangular matrix is the determinant with no sign bookkeeping.
    std::uint32_t det() const {
        if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
        const Gf& F = *F_;
        FMat m = *this;
        unsigned n = rows_;
        for (unsigned col = 0; col < n; ++col) {
            if (!m.at(col, col)) {
                unsigned src = col + 1;
                for (; src < n; ++src)
                    if (m.at(src, col)) break;
                if (src == n) return 0;
                for (unsigned j = 0; j < n; ++j)
                    m.at(col, j) = F.add(m.at(col, j), m.at(src, j));
            }
            std::uint32_t piv_inv = F.inv(m.at(col, col));
            for (unsigned r = col + 1; r < n; ++r) {
                std::uint32_t f = F.mul(m.at(r, col), piv_inv);
                if (!f) continue;
                for (unsigned j = col; j < n; ++j)
                    m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(col, j)));
            }
        }
        std::uint32_t d = 1;
        for (unsigned i = 0; i < n; ++i) d = F.mul(d, m.at(i, i));
        return d;
    }

    FMat inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        const Gf& F = *F_;
        unsigned n = rows_;
        FMat m = *this;
        FMat inv = identity(F, n);
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = col;
            while (piv < n && !m.at(piv, col)) ++piv;
            if (piv == n) throw std::domain_error("matrix is singular");
            if (piv != col)
                for (unsigned j = 0; j < n; ++j) {
                    std::swap(m.at(piv, j), m.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            std::uint32_t s = F.inv(m.at(col, col));
            for (unsigned j = 0; j < n; ++j) {
                m.at(col, j) = F.mul(s, m.at(col, j));
                inv.at(col, j) = F.mul(s, inv.at(col, j));
            }
            for (unsigned r = 0; r < n; ++r) {
                if (r == col || !m.at(r, col)) continue;
                std::uint32_t f = m.at(r, col);
                for (unsigned j = 0; j < n; ++j) {
                    m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(col, j)));
                    inv.at(r, j) = F.sub(inv.at(r, j), F.mul(f, inv.at(col, j)));
                }
            }
        }
        return inv;
    }

    std::string to_text() const {
        std::string out;
        for (unsigned r = 0; r < rows_; ++r) {
            for (unsigned c = 0; c < cols_; ++c) {
                if (c) out += ' ';
                out += F_->literal(at(r, c));
            }
            out += '\n';
        }
        return out;
    }

private:
    const Gf* F_;
    unsigned rows_, cols_;
    std::vector<std::uint32_t> e_;
};

/// Column vectors of F^n packed as codes: code = sum digit_r * q^r.
struct VSpace {
    const Gf* F;
    unsigned n;
    std::vector<std::uint64_t> powq;

    VSpace(const Gf& field, unsigned dim) : F(&field), n(dim), powq(dim + 1) {
        powq[0] = 1;
        for (unsigned i = 0; i < dim; ++i) powq[i + 1] = powq[i] * field.q();
    }

    std::uint64_t count() const { return powq[n]; }
    std::uint32_t digit(std::uint64_t v, unsigned r) const {
        return static_cast<std::uint32_t>((v / powq[r]) % F->q());
    }
    std::uint64_t add(std::uint64_t u, std::uint64_t v) const {
        if (F->p() == 2 && F->k() == 1) return u ^ v;
        std::uint64_t out = 0;
        for (unsigned r = 0; r < n; ++r) out += powq[r] * F->add(digit(u, r), digit(v, r));
        return out;
    }
    std::uint64_t smul(std::uint64_t v, std::uint32_t a) const {
        if (a == 1) return v;
        std::uint64_t out = 0;
        for (unsigned r = 0; r < n; ++r) out += powq[r] * F->mul(digit(v, r), a);
        return out;
    }
    std::uint64_t neg(std::uint64_t v) const { return smul(v, F->minus_one()); }

    std::uint64_t encode(const std::vector<std::uint32_t>& digits) const {
        std::uint64_t v = 0;
        for (unsigned r = 0; r < n; ++r) v += powq[r] * digits[r];
        return v;
    }
    std::vector<std::uint32_t> decode(std::uint64_t v) const {
        std::vector<std::uint32_t> out(n);
        for (unsigned r = 0; r < n; ++r) out[r] = digit(v, r);
        return out;
    }
    std::uint64_t basis_vector(unsigned r) const { return powq[r]; }

    /// Image of the column v under M (rows() == n required of the caller).
    std::uint64_t apply(const FMat& M, std::uint64_t v) const {
        std::vector<std::uint32_t> in = decode(v);
        std::uint64_t out = 0;
        VSpace target(*F, M.rows());
        for (unsigned r = 0; r < M.rows(); ++r) {
            std::uint32_t acc = 0;
            for (unsigned c = 0; c < M.cols(); ++c) acc = F->add(acc, F->mul(M.at(r, c), in[c]));
            out += target.powq[r] * acc;
        }
        return out;
    }
};

/// A subspace of F^n held as its unique column-reduced echelon basis:
/// pivot entries 1, pivot rows strictly increasing with column index, zeros
/// everywhere else in each pivot row and above each pivot. Equal subspaces
/// have identical representations, so these are hashable and comparable.
class Subspace {
public:
    Subspace() : F_(nullptr), n_(0) {}
    Subspace(const Gf& F, unsigned ambient, std::vector<std::uint64_t> canonical_cols)
        : F_(&F), n_(ambient), cols_(std::move(canonical_cols)) {}

    static Subspace zero(const Gf& F, unsigned ambient) { return Subspace(F, ambient, {}); }
    static Subspace full(const Gf& F, unsigned ambient) {
        VSpace V(F, ambient);
        std::vector<std::uint64_t> cols;
        for (unsigned r = 0; r < ambient; ++r) cols.push_back(V.basis_vector(r));
        return Subspace(F, ambient, cols);
    }

    const Gf& field() const { return *F_; }
    unsigned ambient_dim() const { return n_; }
    unsigned dim() const { return static_cast<unsigned>(cols_.size()); }
    const std::vector<std::uint64_t>& cols() const { return cols_; }

    FMat basis_matrix() const {
        VSpace V(*F_, n_);
        FMat m(*F_, n_, dim());
        for (unsigned c = 0; c < dim(); ++c)
            for (unsigned r = 0; r < n_; ++r) m.at(r, c) = V.digit(cols_[c], r);
        return m;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.F_ == b.F_ && a.n_ == b.n_ && a.cols_ == b.cols_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.cols_ < b.cols_;
    }

    std::size_t hash() const {
        std::size_t h = n_ * 1000003u + dim();
        for (auto c : cols_) h = h * 1099511628211ull + c;
        return h;
    }

private:
    const Gf* F_;
    unsigned n_;
    std::vector<std::uint64_t> cols_; // canonical basis columns as codes
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// Canonical column-reduced echelon form of the column span of M.
/// Returns the subspace and its rank. Column operations only (right
/// multiplication by invertibles), so the span is preserved.
inline std::pair<Subspace, unsigned> echelonize(const FMat& M) {
    const Gf& F = M.field();
    unsigned n = M.rows(), k = M.cols();
    std::vector<std::vector<std::uint32_t>> col(k, std::vector<std::uint32_t>(n));
    for (unsigned c = 0; c < k; ++c)
        for (unsigned r = 0; r < n; ++r) col[c][r] = M.at(r, c);
    unsigned rank = 0;
    for (unsigned row = 0; row < n && rank < k; ++row) {
        unsigned pc = rank;
        while (pc < k && !col[pc][row]) ++pc;
        if (pc == k) continue;
        std::swap(col[pc], col[rank]);
        std::uint32_t s = F.inv(col[rank][row]);
        if (s != 1)
            for (unsigned r = 0; r < n; ++r) col[rank][r] = F.mul(col[rank][r], s);
        for (unsigned c = 0; c < k; ++c) {
            if (c == rank || !col[c][row]) continue;
            std::uint32_t f = col[c][row];
            for (unsigned r = 0; r < n; ++r)
                col[c][r] = F.sub(col[c][r], F.mul(col[rank][r], f));
        }
        ++rank;
    }
    VSpace V(F, n);
    std::vector<std::uint64_t> cc;
    cc.reserve(rank);
    for (unsigned c = 0; c < rank; ++c) cc.push_back(V.encode(col[c]));
    return {Subspace(F, n, std::move(cc)), rank};
}

inline Subspace span_of_columns(const Gf& F, unsigned n, const std::vector<std::uint64_t>& vcols) {
    VSpace V(F, n);
    FMat m(F, n, static_cast<unsigned>(vcols.size()));
    for (unsigned c = 0; c < vcols.size(); ++c)
        for (unsigned r = 0; r < n; ++r) m.at(r, c) = V.digit(vcols[c], r);
    return echelonize(m).first;
}

/// Residue of v after eliminating against the canonical basis of S;
/// zero iff v lies in S.
inline std::uint64_t sift_vector(const Subspace& S, std::uint64_t v) {
    const Gf& F = S.field();
    VSpace V(F, S.ambient_dim());
    for (auto bc : S.cols()) {
        // pivot row of this basis column = lowest row with nonzero digit
        unsigned pr = 0;
        while (V.digit(bc, pr) == 0) ++pr;
        std::uint32_t coeff = V.digit(v, pr);
        if (coeff) v = V.add(v, V.neg(V.smul(bc, coeff)));
    }
    return v;
}

inline bool subspace_contains(const Subspace& S, std::uint64_t v) {
    return sift_vector(S, v) == 0;
}
inline bool subspace_contains(const Subspace& outer, const Subspace& inner) {
    for (auto c : inner.cols())
        if (!subspace_contains(outer, c)) return false;
    return true;
}
inline bool incident(const Subspace& a, const Subspace& b) {
    return subspace_contains(a, b) || subspace_contains(b, a);
}

inline Subspace join(const Subspace& a, const Subspace& b) {
    if (&a.field() != &b.field() || a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace ambient mismatch");
    std::vector<std::uint64_t> cols = a.cols();
    cols.insert(cols.end(), b.cols().begin(), b.cols().end());
    return span_of_columns(a.field(), a.ambient_dim(), cols);
}

/// Right null space {x : Mx = 0} as a list of canonical column codes in F^cols.
inline Subspace kernel(const FMat& M) {
    const Gf& F = M.field();
    unsigned rows = M.rows(), cols = M.cols();
    FMat m = M;
    std::vector<int> pivot_col_of_row(rows, -1);
    std::vector<int> pivot_row_of_col(cols, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned pr = rank;
        while (pr < rows && !m.at(pr, c)) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            for (unsigned j = 0; j < cols; ++j) std::swap(m.at(pr, j), m.at(rank, j));
        std::uint32_t s = F.inv(m.at(rank, c));
        for (unsigned j = 0; j < cols; ++j) m.at(rank, j) = F.mul(s, m.at(rank, j));
        for (unsigned r = 0; r < rows; ++r) {
            if (r == rank || !m.at(r, c)) continue;
            std::uint32_t f = m.at(r, c);
            for (unsigned j = 0; j < cols; ++j)
                m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(rank, j)));
        }
        pivot_col_of_row[rank] = static_cast<int>(c);
        pivot_row_of_col[c] = static_cast<int>(rank);
        ++rank;
    }
    VSpace V(F, cols);
    std::vector<std::uint64_t> basis;
    for (unsigned c = 0; c < cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        std::vector<std::uint32_t> x(cols, 0);
        x[c] = 1;
        for (unsigned r = 0; r < rank; ++r) {
            int pc = pivot_col_of_row[r];
            x[pc] = F.neg(m.at(r, c));
        }
        basis.push_back(V.encode(x));
    }
    return span_of_columns(F, cols, basis);
}

inline Subspace meet(const Subspace& a, const Subspace& b) {
    if (&a.field() != &b.field() || a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace ambient mismatch");
    const Gf& F = a.field();
    unsigned n = a.ambient_dim();
    unsigned da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace::zero(F, n);
    VSpace V(F, n);
    FMat M(F, n, da + db);
    for (unsigned c = 0; c < da; ++c)
        for (unsigned r = 0; r < n; ++r) M.at(r, c) = V.digit(a.cols()[c], r);
    for (unsigned c = 0; c < db; ++c)
        for (unsigned r = 0; r < n; ++r) M.at(r, da + c) = F.neg(V.digit(b.cols()[c], r));
    Subspace K = kernel(M);
    VSpace VK(F, da + db);
    std::vector<std::uint64_t> vecs;
    for (auto z : K.cols()) {
        std::uint64_t w = 0;
        for (unsigned c = 0; c < da; ++c) w = V.add(w, V.smul(a.cols()[c], VK.digit(z, c)));
        vecs.push_back(w);
    }
    return span_of_columns(F, n, vecs);
}

/// Annihilator of U inside the dual space (coordinates in the dual basis):
/// functionals vanishing on U, i.e. the null space of the transposed basis.
inline Subspace dual_space_map(const Subspace& U) {
    return kernel(U.basis_matrix().transpose());
}

/// Image of a subspace under an invertible matrix, re-canonicalized.
inline Subspace apply_matrix(const FMat& M, const Subspace& S) {
    const Gf& F = S.field();
    VSpace V(F, S.ambient_dim());
    std::vector<std::uint64_t> cols;
    cols.reserve(S.dim());
    for (auto c : S.cols()) cols.push_back(V.apply(M, c));
    return span_of_columns(F, M.rows(), cols);
}

/// All q^dim vectors of the subspace (codes in the ambient space), zero
/// included; deterministic odometer order over the canonical basis.
inline std::vector<std::uint64_t> subspace_vectors(const Subspace& S) {
    const Gf& F = S.field();
    VSpace V(F, S.ambient_dim());
    unsigned k = S.dim();
    std::vector<std::uint64_t> out;
    std::vector<std::uint32_t> coeff(k, 0);
    while (true) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < k; ++i)
            if (coeff[i]) v = V.add(v, V.smul(S.cols()[i], coeff[i]));
        out.push_back(v);
        unsigned i = 0;
        for (; i < k; ++i) {
            if (++coeff[i] < F.q()) break;
            coeff[i] = 0;
        }
        if (i == k) break;
    }
    return out;
}

inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
    if (k > n) return 0;
    // prod_{i=0}^{k-1} (q^{n-i}-1)/(q^{i+1}-1), computed as exact integer
    long double approx = 1.0L;
    for (unsigned i = 0; i < k; ++i) {
        long double num = std::pow((long double)q, (long double)(n - i)) - 1;
        long double den = std::pow((long double)q, (long double)(i + 1)) - 1;
        approx *= num / den;
    }
    if (approx > 1e17L) throw budget_error("gaussian binomial too large");
    // recompute exactly by enumeration-free recurrence: [n k]_q = [n-1 k-1]_q * (q^n-1)/(q^k-1)
    // use the q-Pascal recurrence with a small DP table instead
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (unsigned i = 0; i <= n; ++i) t[i][0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= std::min(i, k); ++j) {
            std::uint64_t qj = 1;
            for (unsigned s = 0; s < j; ++s) qj *= q;
            t[i][j] = t[i - 1][j - 1] + qj * t[i - 1][j];
        }
    return t[n][k];
}

/// One canonical representative per k-dimensional subspace of F^n, by
/// iterating pivot-row sets in lexicographic order and free entries as an
/// ascending base-q odometer (column-major). No duplicates by construction.
inline std::vector<Subspace> enumerate_grassmannian(unsigned n, unsigned k, const Gf& F,
                                                    const Budget& budget = Budget::defaults()) {
    if (k > n) throw std::invalid_argument("grassmannian k > n");
    std::uint64_t total = gaussian_binomial(n, k, F.q());
    budget.require_grassmannian(total, "enumerate_grassmannian");
    std::vector<Subspace> out;
    out.reserve(total);
    if (k == 0) {
        out.push_back(Subspace::zero(F, n));
        return out;
    }
    VSpace V(F, n);
    // pivot combinations in lexicographic order
    std::vector<unsigned> piv(k);
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<char> is_piv(n, 0);
        for (auto r : piv) is_piv[r] = 1;
        // free cells: (column j, row r) with r > piv[j], r not a pivot row
        std::vector<std::pair<unsigned, unsigned>> free_cells;
        for (unsigned j = 0; j < k; ++j)
            for (unsigned r = piv[j] + 1; r < n; ++r)
                if (!is_piv[r]) free_cells.emplace_back(j, r);
        std::vector<std::uint32_t> digits(free_cells.size(), 0);
        while (true) {
            std::vector<std::uint64_t> cols(k);
            for (unsigned j = 0; j < k; ++j) cols[j] = V.basis_vector(piv[j]);
            for (std::size_t t = 0; t < free_cells.size(); ++t)
                if (digits[t])
                    cols[free_cells[t].first] =
                        V.add(cols[free_cells[t].first],
                              V.smul(V.basis_vector(free_cells[t].second), digits[t]));
            out.emplace_back(F, n, std::move(cols));
            std::size_t t = 0;
            for (; t < digits.size(); ++t) {
                if (++digits[t] < F.q()) break;
                digits[t] = 0;
            }
            if (t == digits.size()) break;
        }
        // next pivot combination
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

/// Order of GL_n(q) (throws budget_error past 2^63-ish).
inline std::uint64_t gl_order(unsigned n, std::uint64_t q) {
    long double approx = 1.0L;
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= q;
    for (unsigned i = 0; i < n; ++i) {
        std::uint64_t qi = 1;
        for (unsigned j = 0; j < i; ++j) qi *= q;
        approx *= (long double)(qn - qi);
    }
    if (approx > 9e18L) throw budget_error("GL order overflows 64-bit count");
    std::uint64_t out = 1;
    for (unsigned i = 0; i < n; ++i) {
        std::uint64_t qi = 1;
        for (unsigned j = 0; j < i; ++j) qi *= q;
        out *= (qn - qi);
    }
    return out;
}

/// Calls fn for every invertible n x n matrix over F, enumerated row by row
/// (rows as ascending vector codes, each outside the span of its
/// predecessors); deterministic order.
inline void enumerate_invertible(unsigned n, const Gf& F, const Budget& budget,
                                 const std::function<void(const FMat&)>& fn) {
    std::uint64_t total = gl_order(n, F.q());
    budget.require_enumeration(total, "enumerate_invertible");
    VSpace V(F, n);
    std::uint64_t space = V.count();
    std::vector<char> in_span(space, 0);
    std::vector<std::uint64_t> span_list;
    in_span[0] = 1;
    span_list.push_back(0);
    FMat m(F, n, n);
    std::vector<std::size_t> span_mark(n + 1);
    std::function<void(unsigned)> rec = [&](unsigned row) {
        if (row == n) {
            fn(m);
            return;
        }
        span_mark[row] = span_list.size();
        for (std::uint64_t v = 1; v < space; ++v) {
            if (in_span[v]) continue;
            for (unsigned c = 0; c < n; ++c) m.at(row, c) = V.digit(v, c);
            // extend span by all multiples of v added to existing elements
            std::size_t base = span_list.size();
            for (std::size_t t = 0; t < base; ++t)
                for (std::uint32_t a = 1; a < F.q(); ++a) {
                    std::uint64_t w = V.add(span_list[t], V.smul(v, a));
                    if (!in_span[w]) {
                        in_span[w] = 1;
                        span_list.push_back(w);
                    }
                }
            rec(row + 1);
            while (span_list.size() > base) {
                in_span[span_list.back()] = 0;
                span_list.pop_back();
            }
        }
    };
    rec(0);
}

inline FMat random_matrix(const Gf& F, unsigned rows, unsigned cols, std::mt19937_64& rng) {
    FMat m(F, rows, cols);
    std::uniform_int_distribution<std::uint32_t> dist(0, F.q() - 1);
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c) m.at(r, c) = dist(rng);
    return m;
}

inline FMat random_invertible(const Gf& F, unsigned n, std::mt19937_64& rng) {
    while (true) {
        FMat m = random_matrix(F, n, n, rng);
        if (m.det() != 0) return m;
    }
}

} // namespace geomforge
