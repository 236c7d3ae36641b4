#include "twistcoh/matrix.hpp"

#include "twistcoh/errors.hpp"

namespace twistcoh {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionError("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw DimensionError("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::conj() const {
    Matrix m = *this;
    for (auto& x : m.data_)
        if (!x.is_rational()) x = x.conj();
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& which) const {
    Matrix m(which.size(), cols_);
    for (std::size_t r = 0; r < which.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(which[r], c);
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& which) const {
    Matrix m(rows_, which.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < which.size(); ++c) m(r, c) = (*this)(r, which[c]);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_rational() const {
    for (const auto& x : data_)
        if (!x.is_rational()) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_)
        if (!x.is_zero()) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(r, k);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Scalar& y = b(k, c);
                if (!y.is_zero()) p(r, c) += x * y;
            }
        }
    return p;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t c = 0; c < a.cols_; ++c)
            if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vstack column mismatch");
    Matrix m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(top.rows() + r, c) = bottom(r, c);
    return m;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
    if (left.rows() != right.rows()) throw DimensionError("hstack row mismatch");
    Matrix m(left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
        for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
    }
    return m;
}

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vector conj(const Vector& v) {
    Vector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].conj();
    return out;
}

std::vector<std::string> to_strings(const Vector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

}  // namespace twistcoh
