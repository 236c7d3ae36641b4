#pragma once

#include "twistcoh/exterior.hpp"
#include "twistcoh/matrix.hpp"
#include "twistcoh/model.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace twistcoh {

/// Complexified exterior algebra of a model split by type (p,q).
///
/// Letters 0..m-1 stand for the (1,0)-coframe phi_1..phi_m and letters
/// m..2m-1 for the conjugates. A degree-k basis lists the (p,q) blocks with p
/// ascending; inside a block, phi_A ^ phibar_B runs over A in lexicographic
/// order, then B.
class BigradedBasis {
public:
    /// Throws ModelError when J^2 != -1 or the structure is not integrable.
    explicit BigradedBasis(const Model& m);

    int real_dim() const { return n_; }
    int complex_dim() const { return m_; }

    /// n x n; columns are phi_1..phi_m, phibar_1..phibar_m in real coordinates.
    const Matrix& coframe() const { return coframe_; }

    std::size_t degree_size(int k) const;
    std::size_t block_size(int p, int q) const;
    std::size_t block_offset(int p, int q) const;
    std::vector<std::size_t> block_indices(int p, int q) const;
    /// Inclusion of the (p,q) block into degree p+q coordinates.
    Matrix inclusion(int p, int q) const;
    std::pair<int, int> bidegree(int k, std::size_t index) const;

    const std::vector<Mask>& masks(int k) const { return masks_.at(static_cast<std::size_t>(k)); }

    /// Columns: complex basis elements of degree k in real coordinates.
    const Matrix& to_real(int k) const { return to_real_.at(static_cast<std::size_t>(k)); }
    const Matrix& from_real(int k) const { return from_real_.at(static_cast<std::size_t>(k)); }

    /// Re-expresses a real-basis map Lambda^k -> Lambda^{k+shift} in complex bases.
    Matrix to_complex(const Matrix& real_op, int k, int shift) const;

    /// Complex conjugation of a degree-k form given in complex coordinates;
    /// it exchanges the (p,q) and (q,p) blocks.
    Vector conjugate(const Vector& v, int k) const;

    std::string label(int k, std::size_t index) const;

private:
    int n_ = 0;
    int m_ = 0;
    Matrix coframe_;
    std::vector<std::vector<Mask>> masks_;
    std::vector<Matrix> to_real_;
    std::vector<Matrix> from_real_;
    std::vector<Matrix> conj_;
};

BigradedBasis bigraded(const Model& m);

}  // namespace twistcoh
