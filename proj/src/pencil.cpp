#include "twistcoh/pencil.hpp"

#include "twistcoh/errors.hpp"

#include <algorithm>
#include <utility>

namespace twistcoh {

Pencil Pencil::affine(const Matrix& constant, const Matrix& slope) {
    if (constant.rows() != slope.rows() || constant.cols() != slope.cols())
        throw DimensionError("pencil parts have different shapes");
    Pencil p(constant.rows(), constant.cols());
    for (std::size_t r = 0; r < p.rows_; ++r)
        for (std::size_t c = 0; c < p.cols_; ++c) p(r, c) = Poly::linear(constant(r, c), slope(r, c));
    return p;
}

Pencil Pencil::constant(const Matrix& m) {
    Pencil p(m.rows(), m.cols());
    for (std::size_t r = 0; r < p.rows_; ++r)
        for (std::size_t c = 0; c < p.cols_; ++c) p(r, c) = Poly(m(r, c));
    return p;
}

Matrix Pencil::at(const Scalar& alpha) const {
    Matrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).eval(alpha);
    return m;
}

Pencil Pencil::select_rows(const std::vector<std::size_t>& which) const {
    Pencil p(which.size(), cols_);
    for (std::size_t r = 0; r < which.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) p(r, c) = (*this)(which[r], c);
    return p;
}

Pencil Pencil::select_columns(const std::vector<std::size_t>& which) const {
    Pencil p(rows_, which.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < which.size(); ++c) p(r, c) = (*this)(r, which[c]);
    return p;
}

int Pencil::max_degree() const {
    int d = -1;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
}

Pencil operator*(const Pencil& a, const Pencil& b) {
    if (a.cols_ != b.rows_) throw DimensionError("pencil product shape mismatch");
    Pencil p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(r, k).is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c)
                if (!b(k, c).is_zero()) p(r, c) += a(r, k) * b(k, c);
        }
    return p;
}

Pencil vstack(const Pencil& top, const Pencil& bottom) {
    if (top.cols_ != bottom.cols_) throw DimensionError("pencil vstack column mismatch");
    Pencil p(top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.entries_.begin(), top.entries_.end(), p.entries_.begin());
    std::copy(bottom.entries_.begin(), bottom.entries_.end(),
              p.entries_.begin() + static_cast<std::ptrdiff_t>(top.entries_.size()));
    return p;
}

namespace {

struct BareissResult {
    std::size_t rank = 0;
    Poly last_pivot;
    bool negated = false;
};

BareissResult bareiss(Pencil m) {
    BareissResult out;
    Poly prev(Scalar(1));
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
            out.negated = !out.negated;
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t k = c + 1; k < m.cols(); ++k) {
                Poly num = m(r, c) * m(i, k) - m(i, c) * m(r, k);
                m(i, k) = exact_quotient(num, prev);
            }
            m(i, c) = Poly();
        }
        prev = m(r, c);
        ++r;
    }
    out.rank = r;
    out.last_pivot = prev;
    return out;
}

}  // namespace

std::size_t generic_rank(const Pencil& p) { return bareiss(p).rank; }

Poly determinant(const Pencil& p) {
    if (p.rows() != p.cols()) throw DimensionError("determinant of a non-square pencil");
    if (p.rows() == 0) return Poly(Scalar(1));
    BareissResult b = bareiss(p);
    if (b.rank < p.rows()) return Poly();
    return b.negated ? -b.last_pivot : b.last_pivot;
}

Diagonalization diagonalize(const Pencil& p) {
    Pencil m = p;
    Diagonalization out;
    out.divisor = Poly(Scalar(1));
    const std::size_t rows = m.rows(), cols = m.cols();
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < cols; ++k) std::swap(m(a, k), m(b, k));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < rows; ++k) std::swap(m(k, a), m(k, b));
    };
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: nonzero entry of least degree in the trailing block.
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!m(i, j).is_zero() && (bi == rows || m(i, j).degree() < m(bi, bj).degree())) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        swap_rows(t, bi);
        swap_cols(t, bj);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = t + 1; i < rows && !changed; ++i) {
                if (m(i, t).is_zero()) continue;
                Poly q = divmod(m(i, t), m(t, t)).first;
                for (std::size_t k = t; k < cols; ++k)
                    if (!m(t, k).is_zero()) m(i, k) -= q * m(t, k);
                if (!m(i, t).is_zero()) {
                    swap_rows(t, i);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < cols && !changed; ++j) {
                if (m(t, j).is_zero()) continue;
                Poly q = divmod(m(t, j), m(t, t)).first;
                for (std::size_t k = t; k < rows; ++k)
                    if (!m(k, t).is_zero()) m(k, j) -= q * m(k, t);
                if (!m(t, j).is_zero()) {
                    swap_cols(t, j);
                    changed = true;
                }
            }
        }
        out.pivots.push_back(m(t, t));
        out.divisor *= m(t, t);
        ++out.rank;
    }
    out.divisor = out.divisor.monic();
    return out;
}

ExceptionalSet pencil_exceptional_set(const Pencil& p) {
    ExceptionalSet out;
    out.generic_rank = generic_rank(p);
    Diagonalization diag = diagonalize(p);
    if (diag.rank != out.generic_rank)
        throw PreconditionError("pencil rank routes disagree: Bareiss " + std::to_string(out.generic_rank) +
                                " vs diagonalization " + std::to_string(diag.rank));
    if (diag.divisor.degree() <= 0) return out;
    RootSplit split = split_rational_roots(diag.divisor);
    for (const auto& r : split.roots) out.rational_roots.push_back(r.value);
    if (split.residual.degree() > 0) out.residual_factors.push_back(squarefree_part(split.residual));
    return out;
}

Poly characteristic_polynomial(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("characteristic polynomial of a non-square matrix");
    return determinant(Pencil::affine(m * Scalar(-1), Matrix::identity(m.rows())));
}

}  // namespace twistcoh
