#include "twistcoh/frolicher.hpp"

#include "twistcoh/errors.hpp"

namespace twistcoh {

std::size_t SpectralPage::dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim;
}

std::size_t SpectralPage::total(int k) const {
    std::size_t sum = 0;
    for (const auto& [pq, e] : entries)
        if (pq.first + pq.second == k) sum += e.dim;
    return sum;
}

std::map<std::pair<int, int>, std::size_t> SpectralPage::dims() const {
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [pq, e] : entries) out[pq] = e.dim;
    return out;
}

namespace {

/// Block operators between types, with the twisted del and delbar evaluated.
class BlockOps {
public:
    BlockOps(const BigradedBasis& b, const TwistedOperators& ops) : b_(b), ops_(ops) {}

    std::size_t size(int p, int q) const { return b_.block_size(p, q); }

    /// del: (p,q) -> (p+1,q)
    Matrix del(int p, int q) const { return restrict(ops_.twisted_del(p + q), p, q, p + 1, q); }
    /// delbar: (p,q) -> (p,q+1)
    Matrix delbar(int p, int q) const { return restrict(ops_.twisted_delbar(p + q), p, q, p, q + 1); }

private:
    Matrix restrict(const Matrix& op, int p, int q, int p2, int q2) const {
        if (size(p, q) == 0 || size(p2, q2) == 0) return Matrix(size(p2, q2), size(p, q));
        return op.select_rows(b_.block_indices(p2, q2)).select_columns(b_.block_indices(p, q));
    }
    const BigradedBasis& b_;
    const TwistedOperators& ops_;
};

void place(Matrix& into, const Matrix& block, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) into(r0 + r, c0 + c) = block(r, c);
}

/// x_0 in Lambda^{p,q} extendable by x_i in Lambda^{p+i,q-i}, i < r, with
/// delbar x_0 = 0 and del x_{i-1} + delbar x_i = 0.
Subspace zigzag_cycles(const BlockOps& ops, int p, int q, int r) {
    std::vector<std::size_t> col_off{0};
    for (int i = 0; i < r; ++i) col_off.push_back(col_off.back() + ops.size(p + i, q - i));
    std::vector<std::size_t> row_off{0};
    for (int i = 0; i < r; ++i) row_off.push_back(row_off.back() + ops.size(p + i, q - i + 1));
    Matrix system(row_off.back(), col_off.back());
    for (int i = 0; i < r; ++i) {
        auto ui = static_cast<std::size_t>(i);
        place(system, ops.delbar(p + i, q - i), row_off[ui], col_off[ui]);
        if (i > 0) place(system, ops.del(p + i - 1, q - i + 1), row_off[ui], col_off[ui - 1]);
    }
    Matrix project(ops.size(p, q), col_off.back());
    for (std::size_t i = 0; i < project.rows(); ++i) project(i, i) = 1;
    return image_of(project, kernel_basis(system));
}

/// delbar y_0 + del y_1 with y_0 in Lambda^{p,q-1}, y_j in Lambda^{p-j,q+j-1}
/// for 1 <= j < r, delbar y_j + del y_{j+1} = 0 and delbar y_{r-1} = 0.
Subspace zigzag_boundaries(const BlockOps& ops, int p, int q, int r) {
    std::vector<std::size_t> col_off{0, ops.size(p, q - 1)};
    for (int j = 1; j < r; ++j) col_off.push_back(col_off.back() + ops.size(p - j, q + j - 1));
    std::vector<std::size_t> row_off{0};
    for (int j = 1; j < r; ++j) row_off.push_back(row_off.back() + ops.size(p - j, q + j));
    Matrix system(row_off.back(), col_off.back());
    for (int j = 1; j < r; ++j) {
        auto uj = static_cast<std::size_t>(j);
        place(system, ops.delbar(p - j, q + j - 1), row_off[uj - 1], col_off[uj]);
        if (j + 1 < r) place(system, ops.del(p - j - 1, q + j), row_off[uj - 1], col_off[uj + 1]);
    }
    Matrix map(ops.size(p, q), col_off.back());
    place(map, ops.delbar(p, q - 1), 0, 0);
    if (r > 1) place(map, ops.del(p - 1, q), 0, col_off[1]);
    return image_of(map, kernel_basis(system));
}

SpectralPage compute_page(const BlockOps& ops, int m, int r) {
    SpectralPage page;
    page.r = r;
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) {
            PageEntry e{0, zigzag_cycles(ops, p, q, r), zigzag_boundaries(ops, p, q, r)};
            e.dim = quotient_dim(e.cycles, e.boundaries);
            page.entries.emplace(std::make_pair(p, q), std::move(e));
        }
    return page;
}

}  // namespace

std::vector<SpectralPage> pages(const TwistedFamily& f, const Weight& w, int r_max) {
    if (r_max < 1) throw DimensionError("r_max must be at least 1");
    const BigradedBasis& b = f.basis();
    TwistedOperators ops = f.at(w);
    BlockOps blocks(b, ops);
    const int m = f.complex_dim();
    std::vector<SpectralPage> out;
    for (int r = 1; r <= std::min(r_max, m + 1); ++r) out.push_back(compute_page(blocks, m, r));
    return out;
}

int degeneration_page(const TwistedFamily& f, const Weight& w) {
    const int m = f.complex_dim();
    auto all = pages(f, w, m + 1);
    const SpectralPage& last = all.back();
    auto mn = morse_novikov(f, w).degree_dims();
    for (int k = 0; k <= f.dim(); ++k)
        if (last.total(k) != mn[static_cast<std::size_t>(k)])
            throw PreconditionError("spectral sequence does not abut to the twisted cohomology in degree " +
                                    std::to_string(k));
    for (const auto& page : all)
        if (page.dims() == last.dims()) return page.r;
    return last.r;
}

PartialExactness e1_partial_exactness(const TwistedFamily& f, const Weight& w, int p, int q) {
    const int m = f.complex_dim();
    if (p < 0 || q < 0 || p > m || q > m) throw DimensionError("bidegree out of range");
    TwistedOperators ops = f.at(w);
    BlockOps blocks(f.basis(), ops);
    Subspace b1 = zigzag_boundaries(blocks, p, q, 1);
    Subspace z2 = zigzag_cycles(blocks, p, q, 2);
    Subspace b2 = zigzag_boundaries(blocks, p, q, 2);
    PartialExactness out;
    out.kernel_dim = quotient_dim(z2, b1);
    out.image_dim = quotient_dim(b2, b1);
    out.exact = out.kernel_dim == out.image_dim;
    return out;
}

ExgenCheck exgen_check(const TwistedFamily& f, const Weight& w, int p, int q) {
    const int m = f.complex_dim();
    if (p < 0 || q < 0 || p > m || q > m) throw DimensionError("bidegree out of range");
    const BigradedBasis& b = f.basis();
    const Weight w_bar(w.alpha.conj());
    TwistedOperators ops = f.at(w);
    TwistedOperators ops_bar = f.at(w_bar);
    const int k = p + q;

    CohomologyReport bc = bott_chern(f, w, p, q);
    Matrix incl = b.inclusion(p, q);
    Subspace cycles = image_of(incl, kernel_basis(vstack(ops.total(k) * incl, ops.twisted_dc(k) * incl)));
    Subspace boundaries = image_of(incl, image_within_coordinates(ops.total(k - 1) * ops.twisted_dc(k - 2),
                                                                  b.block_indices(p, q)));
    Subspace exact_part = intersect(cycles, image_subspace(ops.total(k - 1)));

    std::vector<Vector> sources;
    if (p >= 1) {
        Matrix from = b.inclusion(p - 1, q);
        Subspace closed = image_of(from, kernel_basis(ops.twisted_delbar(k - 1) * from));
        for (const auto& x : closed.basis()) sources.push_back(ops.twisted_del(k - 1) * x);
    }
    if (q >= 1) {
        Matrix from = b.inclusion(q - 1, p);
        Subspace closed = image_of(from, kernel_basis(ops_bar.twisted_delbar(k - 1) * from));
        for (const auto& y : closed.basis()) sources.push_back(ops.twisted_delbar(k - 1) * b.conjugate(y, k - 1));
    }
    Subspace image = sum(Subspace::span(b.degree_size(k), sources), boundaries);
    if (!exact_part.contains(image)) throw PreconditionError("del/delbar images are not d-exact Bott-Chern cycles");

    ExgenCheck out;
    if (p >= 1) out.source_dim += dolbeault(f, w).dim(p - 1, q);
    if (q >= 1) out.source_dim += dolbeault(f, w_bar).dim(q - 1, p);
    out.bc_dim = bc.entries.front().dim;
    out.mn_dim = morse_novikov(f, w).degree_dims().at(static_cast<std::size_t>(k));
    out.image_dim = quotient_dim(image, boundaries);
    out.kernel_dim = quotient_dim(exact_part, boundaries);
    out.exact = out.image_dim == out.kernel_dim;
    return out;
}

}  // namespace twistcoh
