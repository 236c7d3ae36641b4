#pragma once

#include "twistcoh/matrix.hpp"
#include "twistcoh/poly.hpp"

#include <cstddef>
#include <vector>

namespace twistcoh {

/// Matrix whose entries are polynomials in the weight parameter alpha. The
/// affine family A + alpha*B is the common case; products of affine families
/// (d_{a theta} d^c_{a theta}) give quadratic entries.
class Pencil {
public:
    Pencil() = default;
    Pencil(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static Pencil affine(const Matrix& constant, const Matrix& slope);
    static Pencil constant(const Matrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Matrix at(const Scalar& alpha) const;
    Pencil select_rows(const std::vector<std::size_t>& which) const;
    Pencil select_columns(const std::vector<std::size_t>& which) const;
    int max_degree() const;

    friend Pencil operator*(const Pencil& a, const Pencil& b);
    friend Pencil vstack(const Pencil& top, const Pencil& bottom);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Poly> entries_;
};

/// Rank over the rational-function field Q(i)(alpha), by fraction-free
/// (Bareiss) elimination on polynomial entries.
std::size_t generic_rank(const Pencil& p);

/// Determinant of a square pencil by Bareiss elimination.
Poly determinant(const Pencil& p);

struct Diagonalization {
    std::size_t rank = 0;
    std::vector<Poly> pivots;  ///< diagonal entries after unimodular row/column operations
    Poly divisor;              ///< monic product of the pivots
};

/// Reduces p to diagonal form with unimodular row and column operations over
/// the Euclidean ring Q(i)[alpha]. The product of the pivots is the gcd of all
/// maximal non-vanishing minors, so rank(p(a)) < rank exactly at its roots.
Diagonalization diagonalize(const Pencil& p);

struct ExceptionalSet {
    std::size_t generic_rank = 0;
    std::vector<Rational> rational_roots;  ///< ascending, distinct
    std::vector<Poly> residual_factors;    ///< monic, squarefree, no rational roots
};

ExceptionalSet pencil_exceptional_set(const Pencil& p);

/// det(x*I - m).
Poly characteristic_polynomial(const Matrix& m);

}  // namespace twistcoh
