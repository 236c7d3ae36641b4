#include "twistcoh/linalg.hpp"

#include "twistcoh/errors.hpp"

#include <algorithm>

namespace twistcoh {

RowEchelon rref(Matrix m) {
    RowEchelon out;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(r, k));
        Scalar inv = m(r, c).inverse();
        for (std::size_t k = c; k < cols; ++k)
            if (!m(r, k).is_zero()) m(r, k) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (std::size_t k = c; k < cols; ++k)
                if (!m(r, k).is_zero()) m(i, k) -= f * m(r, k);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    RowEchelon e = rref(Matrix::from_rows(ambient, vectors));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        auto row = e.reduced.row(r);
        s.basis_.emplace_back(row.begin(), row.end());
    }
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < ambient; ++k) {
        Vector v(ambient);
        v[k] = 1;
        vs.push_back(std::move(v));
    }
    return span(ambient, vs);
}

Matrix Subspace::rows() const { return Matrix::from_rows(ambient_, basis_); }

Matrix Subspace::columns() const { return Matrix::from_columns(ambient_, basis_); }

Vector Subspace::reduce(Vector v) const {
    if (v.size() != ambient_) throw DimensionError("vector does not live in the subspace's ambient space");
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        Scalar f = v[pivots_[r]];
        if (f.is_zero()) continue;
        for (std::size_t k = 0; k < ambient_; ++k)
            if (!basis_[r][k].is_zero()) v[k] -= f * basis_[r][k];
    }
    return v;
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("ambient dimension mismatch");
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vector& v) { return contains(v); });
}

Subspace kernel_basis(const Matrix& m) {
    RowEchelon e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> vs;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (!e.reduced(r, f).is_zero()) v[e.pivots[r]] = -e.reduced(r, f);
        vs.push_back(std::move(v));
    }
    return Subspace::span(cols, vs);
}

Subspace image_subspace(const Matrix& m) {
    std::vector<Vector> cols;
    cols.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
    return Subspace::span(m.rows(), cols);
}

Subspace image_of(const Matrix& m, const Subspace& s) {
    if (m.cols() != s.ambient()) throw DimensionError("map domain does not match subspace ambient");
    std::vector<Vector> vs;
    vs.reserve(s.dim());
    for (const auto& b : s.basis()) vs.push_back(m * b);
    return Subspace::span(m.rows(), vs);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("ambient dimension mismatch in sum");
    std::vector<Vector> vs = a.basis();
    vs.insert(vs.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(a.ambient(), vs);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("ambient dimension mismatch in intersection");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
    // Solve sum x_i a_i - sum y_j b_j = 0; the intersection is spanned by sum x_i a_i.
    Matrix system = hstack(a.columns(), b.columns() * Scalar(-1));
    Subspace ker = kernel_basis(system);
    std::vector<Vector> vs;
    Matrix ac = a.columns();
    for (const auto& sol : ker.basis()) {
        Vector x(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(a.dim()));
        vs.push_back(ac * x);
    }
    return Subspace::span(a.ambient(), vs);
}

std::size_t quotient_dim(const Subspace& big, const Subspace& small) {
    if (!big.contains(small)) throw PreconditionError("quotient requested but the subspace is not contained");
    return big.dim() - small.dim();
}

std::vector<Vector> quotient_representatives(const Subspace& big, const Subspace& small) {
    if (!big.contains(small)) throw PreconditionError("quotient requested but the subspace is not contained");
    std::vector<Vector> reduced;
    for (const auto& v : big.basis()) {
        Vector r = small.reduce(v);
        if (!is_zero(r)) reduced.push_back(std::move(r));
    }
    return Subspace::span(big.ambient(), reduced).basis();
}

Subspace image_within_coordinates(const Matrix& m, const std::vector<std::size_t>& keep) {
    std::vector<bool> kept(m.rows(), false);
    for (auto k : keep) kept[k] = true;
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!kept[r]) rest.push_back(r);
    Matrix inside = m.select_rows(keep);
    if (rest.empty()) return image_subspace(inside);
    Subspace ker = kernel_basis(m.select_rows(rest));
    return image_of(inside, ker);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
    Matrix aug = hstack(m, Matrix::from_columns(m.rows(), {b}));
    RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RowEchelon e = rref(hstack(m, Matrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
    return e.reduced.block(0, n, n, n);
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        Scalar inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Scalar f = a(i, c) * inv;
            for (std::size_t k = c; k < n; ++k)
                if (!a(c, k).is_zero()) a(i, k) -= f * a(c, k);
        }
    }
    return det;
}

}  // namespace twistcoh
