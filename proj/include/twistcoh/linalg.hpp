#pragma once

#include "twistcoh/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace twistcoh {

struct RowEchelon {
    Matrix reduced;                    ///< reduced row echelon form, leading ones
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

/// Gauss-Jordan elimination over Q(i). Deterministic: the pivot in each column
/// is the first nonzero entry at or below the current row.
RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// A linear subspace of Q(i)^ambient. The basis is kept in reduced row echelon
/// form, so two equal subspaces always carry identical bases.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace full(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vector>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Basis vectors as matrix rows.
    Matrix rows() const;
    /// Basis vectors as matrix columns.
    Matrix columns() const;

    /// v minus its components along the pivot coordinates of the basis.
    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const Matrix& m);
Subspace image_subspace(const Matrix& m);
/// Image of a subspace under a linear map.
Subspace image_of(const Matrix& m, const Subspace& s);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// dim big - dim small; throws PreconditionError unless small is contained in big.
std::size_t quotient_dim(const Subspace& big, const Subspace& small);

/// Canonical representatives of big/small: the basis vectors of big reduced
/// modulo small, then echelonized. Requires small to be contained in big.
std::vector<Vector> quotient_representatives(const Subspace& big, const Subspace& small);

/// Vectors x with m x = 0 restricted to the coordinates in `keep`, i.e. the
/// subspace {(m x)|keep : (m x)|rest = 0} of the image of m.
Subspace image_within_coordinates(const Matrix& m, const std::vector<std::size_t>& keep);

/// One solution of m x = b, or nullopt when b is not in the column space.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

}  // namespace twistcoh
