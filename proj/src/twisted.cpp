#include "twistcoh/twisted.hpp"

#include "twistcoh/errors.hpp"

#include <algorithm>
#include <set>

namespace twistcoh {

namespace {

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

Matrix zero_map(int n, int k) { return Matrix(binom(n, k + 1), binom(n, k)); }

/// Keeps the entries of a complex-basis operator whose target type is
/// source type + (dp, dq).
Matrix type_part(const BigradedBasis& b, const Matrix& op, int k, int dp, int dq) {
    Matrix out(op.rows(), op.cols());
    for (std::size_t c = 0; c < op.cols(); ++c) {
        auto [p, q] = b.bidegree(k, c);
        for (std::size_t r = 0; r < op.rows(); ++r) {
            if (op(r, c).is_zero()) continue;
            auto [p2, q2] = b.bidegree(k + 1, r);
            if (p2 == p + dp && q2 == q + dq) out(r, c) = op(r, c);
        }
    }
    return out;
}

void require_zero(const Matrix& m, const std::string& what) {
    if (!m.is_zero()) throw PreconditionError("operator identity failed: " + what);
}

std::vector<std::size_t> complement(std::size_t size, const std::vector<std::size_t>& keep) {
    std::vector<bool> kept(size, false);
    for (auto k : keep) kept[k] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < size; ++i)
        if (!kept[i]) rest.push_back(i);
    return rest;
}

}  // namespace

Matrix AffineOperator::at(const Scalar& alpha) const {
    if (alpha.is_zero()) return constant;
    return constant + slope * alpha;
}

Matrix TwistedOperators::pick(const std::vector<Matrix>& ops, int k) const {
    if (k < 0 || k >= static_cast<int>(ops.size())) return zero_map(dim, k);
    return ops[static_cast<std::size_t>(k)];
}

TwistedFamily::TwistedFamily(Model m) : model_(std::move(m)) {
    const int n = model_.dim;
    const Form theta = theta_form(model_);
    for (int k = 0; k < n; ++k) {
        Matrix wedge_theta = left_wedge_matrix(theta, n, k, 1);
        d_.push_back({differential_matrix(model_, k), wedge_theta * Scalar(-1)});
    }
    try {
        basis_ = std::make_shared<const BigradedBasis>(model_);
    } catch (const ModelError& e) {
        complex_error_ = e.what();
        return;
    }
    const BigradedBasis& b = *basis_;
    std::vector<Matrix> forms_j;
    for (int k = 0; k <= n; ++k) forms_j.push_back(exterior_power(model_.j, k));
    for (int k = 0; k < n; ++k) {
        const auto& real = d_[static_cast<std::size_t>(k)];
        Matrix j_inv = inverse(forms_j[static_cast<std::size_t>(k)]);
        const Matrix& j_next = forms_j[static_cast<std::size_t>(k + 1)];
        AffineOperator dz{b.to_complex(real.constant, k, 1), b.to_complex(real.slope, k, 1)};
        AffineOperator dc{b.to_complex(j_next * real.constant * j_inv, k, 1),
                          b.to_complex(j_next * real.slope * j_inv, k, 1)};
        AffineOperator del{type_part(b, dz.constant, k, 1, 0), type_part(b, dz.slope, k, 1, 0)};
        AffineOperator delbar{type_part(b, dz.constant, k, 0, 1), type_part(b, dz.slope, k, 0, 1)};
        if (!(del.constant + delbar.constant == dz.constant) || !(del.slope + delbar.slope == dz.slope))
            throw ModelError("exterior derivative has components outside types (1,0) and (0,1) in degree " +
                             std::to_string(k));
        dz_.push_back(std::move(dz));
        dc_.push_back(std::move(dc));
        del_.push_back(std::move(del));
        delbar_.push_back(std::move(delbar));
    }
}

const BigradedBasis& TwistedFamily::basis() const {
    if (!basis_) throw ModelError(complex_error_);
    return *basis_;
}

AffineOperator TwistedFamily::pick(const std::vector<AffineOperator>& ops, int k) const {
    if (k < 0 || k >= static_cast<int>(ops.size())) {
        if (&ops != &d_ && !basis_) throw ModelError(complex_error_);
        Matrix z = zero_map(model_.dim, k);
        return {z, z};
    }
    return ops[static_cast<std::size_t>(k)];
}

const Scalar& ddc_constant() {
    static const Scalar c = [] {
        TwistedFamily f(builtin("hopf_surface"));
        const Scalar one(1);
        Matrix lhs = f.total(1).at(one) * f.twisted_dc(0).at(one);
        Matrix rhs = f.twisted_del(1).at(one) * f.twisted_delbar(0).at(one);
        for (std::size_t r = 0; r < rhs.rows(); ++r)
            for (std::size_t col = 0; col < rhs.cols(); ++col)
                if (!rhs(r, col).is_zero()) {
                    Scalar ratio = lhs(r, col) / rhs(r, col);
                    require_zero(lhs - rhs * ratio, "d d^c proportional to del delbar on functions");
                    return ratio;
                }
        throw PreconditionError("calibration of d d^c found a vanishing del delbar");
    }();
    return c;
}

TwistedOperators TwistedFamily::at(const Weight& w) const {
    TwistedOperators ops;
    ops.alpha = w.alpha;
    ops.dim = model_.dim;
    const int n = model_.dim;
    for (const auto& op : d_) ops.d.push_back(op.at(w.alpha));
    for (int k = 0; k + 1 < n; ++k)
        require_zero(ops.d[static_cast<std::size_t>(k + 1)] * ops.d[static_cast<std::size_t>(k)],
                     "d_{a theta}^2 = 0 in degree " + std::to_string(k));
    if (!basis_) return ops;
    for (int k = 0; k < n; ++k) {
        auto i = static_cast<std::size_t>(k);
        ops.dz.push_back(dz_[i].at(w.alpha));
        ops.dc.push_back(dc_[i].at(w.alpha));
        ops.del.push_back(del_[i].at(w.alpha));
        ops.delbar.push_back(delbar_[i].at(w.alpha));
    }
    const Scalar& c = ddc_constant();
    for (int k = 0; k + 1 < n; ++k) {
        auto i = static_cast<std::size_t>(k);
        const std::string deg = " in degree " + std::to_string(k);
        require_zero(ops.del[i + 1] * ops.del[i], "del^2 = 0" + deg);
        require_zero(ops.delbar[i + 1] * ops.delbar[i], "delbar^2 = 0" + deg);
        require_zero(ops.del[i + 1] * ops.delbar[i] + ops.delbar[i + 1] * ops.del[i],
                     "del delbar + delbar del = 0" + deg);
        require_zero(ops.dz[i + 1] * ops.dc[i] - ops.del[i + 1] * ops.delbar[i] * c, "d d^c = c del delbar" + deg);
    }
    return ops;
}

std::vector<std::size_t> CohomologyReport::degree_dims() const {
    std::vector<std::size_t> out;
    for (const auto& e : entries) {
        if (out.size() <= static_cast<std::size_t>(e.degree)) out.resize(static_cast<std::size_t>(e.degree) + 1, 0);
        out[static_cast<std::size_t>(e.degree)] += e.dim;
    }
    return out;
}

const CohomologyEntry& CohomologyReport::entry(int p, int q) const {
    for (const auto& e : entries)
        if (e.p == p && e.q == q) return e;
    throw DimensionError("no cohomology entry for bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
}

std::size_t CohomologyReport::dim(int p, int q) const {
    for (const auto& e : entries)
        if (e.p == p && e.q == q) return e.dim;
    return 0;
}

namespace {

CohomologyEntry mn_entry(const TwistedOperators& ops, int k) {
    Subspace cycles = kernel_basis(ops.real_d(k));
    Subspace boundaries = image_subspace(ops.real_d(k - 1));
    CohomologyEntry e;
    e.degree = k;
    e.representatives = quotient_representatives(cycles, boundaries);
    e.dim = e.representatives.size();
    return e;
}

CohomologyEntry dolbeault_entry(const BigradedBasis& b, const TwistedOperators& ops, int p, int q) {
    const int k = p + q;
    Matrix incl = b.inclusion(p, q);
    Subspace cycles = image_of(incl, kernel_basis(ops.twisted_delbar(k) * incl));
    Subspace boundaries = image_subspace(ops.twisted_delbar(k - 1) * b.inclusion(p, q - 1));
    CohomologyEntry e;
    e.degree = k;
    e.p = p;
    e.q = q;
    e.representatives = quotient_representatives(cycles, boundaries);
    e.dim = e.representatives.size();
    return e;
}

/// im(d d^c) ∩ Lambda^{p,q}, in degree coordinates.
Subspace ddc_image(const BigradedBasis& b, const TwistedOperators& ops, int p, int q) {
    const int k = p + q;
    Matrix x = ops.total(k - 1) * ops.twisted_dc(k - 2);
    return image_of(b.inclusion(p, q), image_within_coordinates(x, b.block_indices(p, q)));
}

}  // namespace

CohomologyReport morse_novikov(const TwistedFamily& f, const Weight& w) {
    TwistedOperators ops = f.at(w);
    CohomologyReport report;
    report.kind = CohomologyKind::MorseNovikov;
    report.weight = w.alpha;
    for (int k = 0; k <= f.dim(); ++k) report.entries.push_back(mn_entry(ops, k));
    return report;
}

CohomologyReport morse_novikov(const Model& m, const Weight& w) { return morse_novikov(TwistedFamily(m), w); }

CohomologyReport dolbeault(const TwistedFamily& f, const Weight& w) {
    const BigradedBasis& b = f.basis();
    TwistedOperators ops = f.at(w);
    CohomologyReport report;
    report.kind = CohomologyKind::Dolbeault;
    report.weight = w.alpha;
    const int m = f.complex_dim();
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) report.entries.push_back(dolbeault_entry(b, ops, p, q));
    return report;
}

CohomologyReport dolbeault(const Model& m, const Weight& w) { return dolbeault(TwistedFamily(m), w); }

namespace {

void check_bidegree(const TwistedFamily& f, int p, int q) {
    const int m = f.complex_dim();
    if (p < 0 || q < 0 || p > m || q > m)
        throw DimensionError("bidegree (" + std::to_string(p) + "," + std::to_string(q) + ") outside 0.." +
                             std::to_string(m));
}

}  // namespace

CohomologyReport bott_chern(const TwistedFamily& f, const Weight& w, int p, int q) {
    check_bidegree(f, p, q);
    const BigradedBasis& b = f.basis();
    TwistedOperators ops = f.at(w);
    const int k = p + q;
    Matrix incl = b.inclusion(p, q);
    Subspace cycles = image_of(incl, kernel_basis(vstack(ops.total(k) * incl, ops.twisted_dc(k) * incl)));
    Subspace boundaries = ddc_image(b, ops, p, q);
    if (!cycles.contains(boundaries))
        throw PreconditionError("im(d d^c) is not contained in ker d ∩ ker d^c; sign conventions disagree");
    CohomologyReport report;
    report.kind = CohomologyKind::BottChern;
    report.weight = w.alpha;
    CohomologyEntry e;
    e.degree = k;
    e.p = p;
    e.q = q;
    e.representatives = quotient_representatives(cycles, boundaries);
    e.dim = e.representatives.size();
    report.entries.push_back(std::move(e));
    return report;
}

CohomologyReport bott_chern(const Model& m, const Weight& w, int p, int q) {
    return bott_chern(TwistedFamily(m), w, p, q);
}

DdcVerdict ddc_lemma_check(const TwistedFamily& f, const Weight& w, int p, int q) {
    check_bidegree(f, p, q);
    const BigradedBasis& b = f.basis();
    TwistedOperators ops = f.at(w);
    const int k = p + q;
    Matrix d_prev = ops.total(k - 1);
    auto rest = complement(b.degree_size(k), b.block_indices(p, q));
    Matrix constraints = vstack(d_prev.select_rows(rest), ops.twisted_dc(k) * d_prev);
    Subspace left = image_of(d_prev, kernel_basis(constraints));
    Subspace right = ddc_image(b, ops, p, q);
    if (!left.contains(right)) throw PreconditionError("im(d d^c) is not contained in im d ∩ ker d^c");
    DdcVerdict v;
    v.left_dim = left.dim();
    v.right_dim = right.dim();
    v.holds = left.dim() == right.dim();
    if (!v.holds) v.witness = quotient_representatives(left, right).front();
    return v;
}

DdcVerdict ddc_lemma_check(const Model& m, const Weight& w, int p, int q) {
    return ddc_lemma_check(TwistedFamily(m), w, p, q);
}

MnClass mn_class(const TwistedFamily& f, const Weight& w, int degree, const Vector& form) {
    if (degree < 0 || degree > f.dim()) throw DimensionError("form degree out of range");
    if (form.size() != binom(f.dim(), degree)) throw DimensionError("form length does not match degree");
    TwistedOperators ops = f.at(w);
    MnClass out;
    out.closed = is_zero(ops.real_d(degree) * form);
    Matrix d_prev = ops.real_d(degree - 1);
    out.primitive = solve(d_prev, form);
    out.exact = out.primitive.has_value();
    if (!out.closed) return out;
    CohomologyEntry h = mn_entry(ops, degree);
    Matrix reps = Matrix::from_columns(form.size(), h.representatives);
    auto coords = solve(hstack(reps, d_prev), form);
    if (!coords) throw PreconditionError("closed form not spanned by cohomology representatives and boundaries");
    out.class_coordinates.assign(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(h.dim));
    return out;
}

MnClass mn_class(const Model& m, const Weight& w, int degree, const Vector& form) {
    return mn_class(TwistedFamily(m), w, degree, form);
}

bool SpectrumReport::contains(const Scalar& alpha) const {
    if (alpha.is_rational() && std::binary_search(rational_roots.begin(), rational_roots.end(), alpha.re()))
        return true;
    return std::any_of(residual_factors.begin(), residual_factors.end(),
                       [&](const Poly& f) { return f.eval(alpha).is_zero(); });
}

namespace {

struct PencilScan {
    std::set<Rational, RationalLess> roots;
    std::vector<Poly> residuals;

    std::size_t rank(const Pencil& p) {
        ExceptionalSet e = pencil_exceptional_set(p);
        roots.insert(e.rational_roots.begin(), e.rational_roots.end());
        for (const auto& r : e.residual_factors)
            if (std::find(residuals.begin(), residuals.end(), r) == residuals.end()) residuals.push_back(r);
        return e.generic_rank;
    }
};

std::size_t checked_sub(std::size_t a, std::size_t b) {
    if (b > a) throw PreconditionError("negative generic dimension in spectrum scan");
    return a - b;
}

SpectrumEntry scan_entry(const TwistedFamily& f, SpectrumKind kind, int degree, int p, int q) {
    PencilScan scan;
    SpectrumEntry e;
    e.degree = degree;
    e.p = p;
    e.q = q;
    const int n = f.dim();
    if (kind == SpectrumKind::MorseNovikov) {
        std::size_t out = scan.rank(f.real_d(degree).pencil());
        std::size_t in = scan.rank(f.real_d(degree - 1).pencil());
        e.generic_dim = checked_sub(binom(n, degree), out + in);
    } else {
        const BigradedBasis& b = f.basis();
        const auto block = b.block_indices(p, q);
        const auto rest = complement(b.degree_size(degree), block);
        auto ddc_image_dim = [&] {
            Pencil x = f.total(degree - 1).pencil() * f.twisted_dc(degree - 2).pencil();
            std::size_t full = scan.rank(x);
            std::size_t outside = scan.rank(x.select_rows(rest));
            return checked_sub(full, outside);
        };
        if (kind == SpectrumKind::Dolbeault) {
            std::size_t out = scan.rank(f.twisted_delbar(degree).pencil().select_columns(block));
            std::size_t in = scan.rank(f.twisted_delbar(degree - 1).pencil().select_columns(b.block_indices(p, q - 1)));
            e.generic_dim = checked_sub(block.size(), out + in);
        } else if (kind == SpectrumKind::BottChern) {
            Pencil both = vstack(f.total(degree).pencil(), f.twisted_dc(degree).pencil()).select_columns(block);
            std::size_t kernel = checked_sub(block.size(), scan.rank(both));
            e.generic_dim = checked_sub(kernel, ddc_image_dim());
        } else {
            Pencil d_prev = f.total(degree - 1).pencil();
            Pencil constraints = vstack(d_prev.select_rows(rest), f.twisted_dc(degree).pencil() * d_prev);
            std::size_t left = checked_sub(scan.rank(d_prev), scan.rank(constraints));
            e.generic_dim = checked_sub(left, ddc_image_dim());
        }
    }
    e.rational_roots.assign(scan.roots.begin(), scan.roots.end());
    e.residual_factors = std::move(scan.residuals);
    return e;
}

}  // namespace

SpectrumReport exceptional_spectrum(const TwistedFamily& f, const SpectrumSelector& selector) {
    SpectrumReport report;
    report.kind = selector.kind;
    const int n = f.dim();
    if (selector.kind == SpectrumKind::MorseNovikov) {
        if (selector.bidegree) throw DimensionError("Morse-Novikov scans take a degree, not a bidegree");
        if (selector.degree && (*selector.degree < 0 || *selector.degree > n))
            throw DimensionError("degree out of range");
        for (int k = 0; k <= n; ++k)
            if (!selector.degree || *selector.degree == k) report.entries.push_back(scan_entry(f, selector.kind, k, -1, -1));
    } else {
        const int m = f.complex_dim();
        if (selector.bidegree) check_bidegree(f, selector.bidegree->first, selector.bidegree->second);
        for (int p = 0; p <= m; ++p)
            for (int q = 0; q <= m; ++q) {
                if (selector.bidegree && *selector.bidegree != std::make_pair(p, q)) continue;
                if (selector.degree && *selector.degree != p + q) continue;
                report.entries.push_back(scan_entry(f, selector.kind, p + q, p, q));
            }
    }
    std::set<Rational, RationalLess> roots;
    for (const auto& e : report.entries) {
        roots.insert(e.rational_roots.begin(), e.rational_roots.end());
        for (const auto& r : e.residual_factors)
            if (std::find(report.residual_factors.begin(), report.residual_factors.end(), r) ==
                report.residual_factors.end())
                report.residual_factors.push_back(r);
    }
    report.rational_roots.assign(roots.begin(), roots.end());
    return report;
}

SpectrumReport exceptional_spectrum(const Model& m, const SpectrumSelector& selector) {
    return exceptional_spectrum(TwistedFamily(m), selector);
}

}  // namespace twistcoh
