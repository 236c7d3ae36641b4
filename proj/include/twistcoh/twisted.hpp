#pragma once

#include "twistcoh/bigraded.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/model.hpp"
#include "twistcoh/pencil.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twistcoh {

/// Multiple alpha of the Lee form used as twist: d_{alpha theta} = d - alpha theta^.
struct Weight {
    Scalar alpha;
    Weight() = default;
    explicit Weight(Scalar a) : alpha(std::move(a)) {}
};

/// constant + alpha * slope.
struct AffineOperator {
    Matrix constant;
    Matrix slope;
    Matrix at(const Scalar& alpha) const;
    Pencil pencil() const { return Pencil::affine(constant, slope); }
};

/// The twisted operators of one model at a fixed weight. Index k holds the
/// map Lambda^k -> Lambda^{k+1}; indices outside 0..n-1 give zero maps of the
/// right shape. `d` acts in the real lexicographic basis, all others in the
/// complex basis of BigradedBasis.
struct TwistedOperators {
    Scalar alpha;
    int dim = 0;
    std::vector<Matrix> d, dz, dc, del, delbar;

    Matrix real_d(int k) const { return pick(d, k); }
    Matrix total(int k) const { return pick(dz, k); }
    Matrix twisted_dc(int k) const { return pick(dc, k); }
    Matrix twisted_del(int k) const { return pick(del, k); }
    Matrix twisted_delbar(int k) const { return pick(delbar, k); }

private:
    Matrix pick(const std::vector<Matrix>& ops, int k) const;
};

/// The alpha-affine families of all twisted operators of a model. Builds the
/// complex basis once; evaluating at a weight checks d^2 = 0, the splitting
/// d = del + delbar with del^2 = delbar^2 = del delbar + delbar del = 0, and
/// d d^c = c del delbar with the calibrated constant c.
class TwistedFamily {
public:
    explicit TwistedFamily(Model m);

    const Model& model() const { return model_; }
    /// False when J is not an integrable complex structure; only the real
    /// (Morse-Novikov) operators exist then.
    bool has_complex() const { return basis_ != nullptr; }
    /// Throws ModelError without a complex structure.
    const BigradedBasis& basis() const;
    int dim() const { return model_.dim; }
    int complex_dim() const { return model_.dim / 2; }

    /// Out-of-range degrees give zero maps of the right shape.
    AffineOperator real_d(int k) const { return pick(d_, k); }
    AffineOperator total(int k) const { return pick(dz_, k); }
    AffineOperator twisted_dc(int k) const { return pick(dc_, k); }
    AffineOperator twisted_del(int k) const { return pick(del_, k); }
    AffineOperator twisted_delbar(int k) const { return pick(delbar_, k); }

    TwistedOperators at(const Weight& w) const;

private:
    Model model_;
    std::shared_ptr<const BigradedBasis> basis_;
    std::string complex_error_;
    std::vector<AffineOperator> d_, dz_, dc_, del_, delbar_;
    AffineOperator pick(const std::vector<AffineOperator>& ops, int k) const;
};

/// The constant c with d d^c = c del delbar, fixed once by comparing both
/// sides on functions of the Hopf surface model at weight 1.
const Scalar& ddc_constant();

enum class CohomologyKind { MorseNovikov, Dolbeault, BottChern };

struct CohomologyEntry {
    int degree = 0;
    int p = -1;  ///< -1 for Morse-Novikov entries
    int q = -1;
    std::size_t dim = 0;
    std::vector<Vector> representatives;  ///< echelonized, in degree coordinates
};

struct CohomologyReport {
    CohomologyKind kind = CohomologyKind::MorseNovikov;
    Scalar weight;
    std::vector<CohomologyEntry> entries;

    std::vector<std::size_t> degree_dims() const;
    std::size_t dim(int p, int q) const;
    const CohomologyEntry& entry(int p, int q) const;
};

/// H^k of (Lambda^*, d - alpha theta), representatives in the real basis.
CohomologyReport morse_novikov(const TwistedFamily& f, const Weight& w);
CohomologyReport morse_novikov(const Model& m, const Weight& w);

/// h^{p,q} of delbar_{alpha theta} for every (p,q); representatives in the complex basis.
CohomologyReport dolbeault(const TwistedFamily& f, const Weight& w);
CohomologyReport dolbeault(const Model& m, const Weight& w);

/// (ker d ∩ ker d^c ∩ Lambda^{p,q}) / (im d d^c ∩ Lambda^{p,q}), twisted.
/// Throws PreconditionError if the image is not inside the kernel.
CohomologyReport bott_chern(const TwistedFamily& f, const Weight& w, int p, int q);
CohomologyReport bott_chern(const Model& m, const Weight& w, int p, int q);

struct DdcVerdict {
    bool holds = true;
    std::size_t left_dim = 0;   ///< dim(im d ∩ ker d^c ∩ Lambda^{p,q})
    std::size_t right_dim = 0;  ///< dim(im d d^c ∩ Lambda^{p,q})
    std::optional<Vector> witness;
};

DdcVerdict ddc_lemma_check(const TwistedFamily& f, const Weight& w, int p, int q);
DdcVerdict ddc_lemma_check(const Model& m, const Weight& w, int p, int q);

struct MnClass {
    bool closed = false;
    bool exact = false;
    std::optional<Vector> primitive;
    /// Coordinates of the class against the Morse-Novikov representatives of
    /// that degree; empty when the form is not closed.
    Vector class_coordinates;
};

/// Classifies a real k-form (lexicographic coordinates) under d - alpha theta.
MnClass mn_class(const TwistedFamily& f, const Weight& w, int degree, const Vector& form);
MnClass mn_class(const Model& m, const Weight& w, int degree, const Vector& form);

enum class SpectrumKind { MorseNovikov, Dolbeault, BottChern, Ddc };

/// Which groups to scan. Without degree/bidegree every degree or bidegree is included.
struct SpectrumSelector {
    SpectrumKind kind = SpectrumKind::MorseNovikov;
    std::optional<int> degree;
    std::optional<std::pair<int, int>> bidegree;
};

struct SpectrumEntry {
    int degree = 0;
    int p = -1;
    int q = -1;
    /// Dimension for a weight outside the exceptional set; for Ddc the
    /// generic defect dim(left) - dim(right).
    std::size_t generic_dim = 0;
    std::vector<Rational> rational_roots;
    std::vector<Poly> residual_factors;
};

struct SpectrumReport {
    SpectrumKind kind = SpectrumKind::MorseNovikov;
    std::vector<SpectrumEntry> entries;
    std::vector<Rational> rational_roots;  ///< union over entries, ascending
    std::vector<Poly> residual_factors;    ///< distinct, in order of discovery

    /// True when some operator of the scan drops rank at alpha.
    bool contains(const Scalar& alpha) const;
};

SpectrumReport exceptional_spectrum(const TwistedFamily& f, const SpectrumSelector& selector);
SpectrumReport exceptional_spectrum(const Model& m, const SpectrumSelector& selector);

}  // namespace twistcoh
