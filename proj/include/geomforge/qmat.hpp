#pragma once

#include "geomforge/quat.hpp"

#include <stdexcept>
#include <vector>

namespace geomforge {

/// Dense quaternion matrix. Same conventions as the field side: vectors are
/// columns, matrices act from the left, scalars act on the right (which now
/// matters: entries multiply vector coordinates from the left).
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static QMat identity(unsigned n) {
        QMat m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = Quat::one();
        return m;
    }

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    Quat& at(unsigned r, unsigned c) { return e_[r * cols_ + c]; }
    const Quat& at(unsigned r, unsigned c) const { return e_[r * cols_ + c]; }

    friend QMat operator*(const QMat& a, const QMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        QMat out(a.rows_, b.cols_);
        for (unsigned i = 0; i < a.rows_; ++i)
            for (unsigned k = 0; k < a.cols_; ++k) {
                const Quat& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (unsigned j = 0; j < b.cols_; ++j)
                    out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
            }
        return out;
    }
    friend bool operator==(const QMat& a, const QMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const QMat& a, const QMat& b) { return !(a == b); }

    /// Image of a column vector; coordinates combine as sum M_ij * v_j, so
    /// right scalar action on v commutes with the matrix action.
    std::vector<Quat> apply(const std::vector<Quat>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<Quat> out(rows_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j) out[i] = out[i] + at(i, j) * v[j];
        return out;
    }

private:
    unsigned rows_, cols_;
    std::vector<Quat> e_;
};

/// Dieudonne determinant representative: eliminate with row operations that
/// are left multiplications by transvections only (add a left multiple of
/// another row, never swap or scale), then multiply the diagonal. The class
/// in H^x / [H^x, H^x] is the exact invariant; over the rational quaternions
/// class equality is decided by equality of norms.
inline Quat dieudonne_det(const QMat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
    unsigned n = M.rows();
    QMat m = M;
    for (unsigned col = 0; col < n; ++col) {
        if (m.at(col, col).is_zero()) {
            unsigned src = col + 1;
            for (; src < n; ++src)
                if (!m.at(src, col).is_zero()) break;
            if (src == n) throw std::domain_error("singular matrix has no Dieudonne determinant");
            for (unsigned j = 0; j < n; ++j) m.at(col, j) = m.at(col, j) + m.at(src, j);
        }
        Quat piv_inv = m.at(col, col).inverse();
        for (unsigned r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Quat f = m.at(r, col) * piv_inv;
            for (unsigned j = col; j < n; ++j) m.at(r, j) = m.at(r, j) - f * m.at(col, j);
        }
    }
    Quat d = Quat::one();
    for (unsigned i = 0; i < n; ++i) d = d * m.at(i, i);
    return d;
}

} // namespace geomforge
