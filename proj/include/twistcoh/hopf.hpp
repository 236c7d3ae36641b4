#pragma once

#include "twistcoh/jets.hpp"
#include "twistcoh/scalar.hpp"

#include <cstddef>
#include <vector>

namespace twistcoh {

/// Diagonal Hopf manifold (C^n \ 0) / <diag(beta)> with the weight alpha.
struct HopfData {
    int n = 2;
    std::vector<Rational> beta;
    Rational alpha{1};
};

/// Throws DimensionError unless n >= 2, beta has n entries in (0,1) and alpha > 0.
void check(const HopfData& h);

/// Regular: polynomial sections (exponents >= 0) feeding H^0 of the cover.
/// Laurent: principal parts (exponents <= -1) feeding H^{n-1} of the cover.
enum class Slot { Regular, Laurent };

/// z^I dz_J; the monodromy acts on it by beta^I * prod_{j in J} beta_j.
struct MonomialForm {
    MultiIndex exponents;
    std::vector<int> dz;  ///< 0-based, ascending, |dz| = p
    Slot slot = Slot::Regular;
    Rational eigenvalue;
};

/// All p-form monomials of the slot with eigenvalue exactly alpha. The search
/// is complete: along every exponent direction the eigenvalue moves
/// monotonically away from 1, so each branch stops once it passes alpha.
std::vector<MonomialForm> eigenspace(const HopfData& h, int p, Slot slot);

/// dim H^q(M, Omega^p (x) L_alpha) for q = 0..n, from the long exact sequence
/// of t - alpha on the cover's cohomology (nonzero only in degrees 0 and n-1).
std::vector<std::size_t> dolbeault_dims(const HopfData& h, int p);

struct ScanPoint {
    Rational alpha;
    std::vector<std::vector<std::size_t>> dims;  ///< dims[p][q]
    bool all_zero = true;
    Membership membership;  ///< alpha in the monoid generated by beta
    /// Nonzero dimensions occur iff alpha is a monoid point.
    bool consistent = true;
};

/// Evaluates every grid weight with the beta of `h`; `bound` caps the
/// exponent search when the membership test cannot be completed.
std::vector<ScanPoint> vanishing_scan(const HopfData& h, const std::vector<Rational>& grid, int bound);

}  // namespace twistcoh
