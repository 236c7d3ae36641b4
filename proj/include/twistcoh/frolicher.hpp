#pragma once

#include "twistcoh/twisted.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace twistcoh {

/// E_r^{p,q} = Z_r / B_r, both subspaces of Lambda^{p,q} in block coordinates.
struct PageEntry {
    std::size_t dim = 0;
    Subspace cycles;
    Subspace boundaries;
};

struct SpectralPage {
    int r = 1;
    std::map<std::pair<int, int>, PageEntry> entries;

    std::size_t dim(int p, int q) const;
    /// Sum of dim E_r^{p,q} over p + q = k.
    std::size_t total(int k) const;
    std::map<std::pair<int, int>, std::size_t> dims() const;
};

/// Pages E_1 .. E_{min(r_max, m+1)} of the spectral sequence of the double
/// complex (Lambda^{*,*}, del_{a theta}, delbar_{a theta}) filtered by p.
/// From page m+1 on all differentials vanish.
std::vector<SpectralPage> pages(const TwistedFamily& f, const Weight& w, int r_max);

/// Smallest r with E_r = E_infinity. Throws PreconditionError if E_infinity
/// does not abut to the Morse-Novikov dimensions.
int degeneration_page(const TwistedFamily& f, const Weight& w);

/// Exactness of E_1^{p-1,q} -> E_1^{p,q} -> E_1^{p+1,q} (the maps induced by del).
struct PartialExactness {
    bool exact = true;
    std::size_t kernel_dim = 0;  ///< kernel of the outgoing map
    std::size_t image_dim = 0;   ///< image of the incoming map
};

PartialExactness e1_partial_exactness(const TwistedFamily& f, const Weight& w, int p, int q);

/// The sequence
///   H_delbar^{p-1,q}(L_a) + conj H_delbar^{q-1,p}(L_conj(a)) -> H_BC^{p,q}(L_a) -> H^{p+q}(L_a)
/// with first map [x] + conj[y] -> [del x + delbar conj(y)] and second the
/// tautological map; exactness at the middle term.
struct ExgenCheck {
    bool exact = true;
    std::size_t source_dim = 0;
    std::size_t bc_dim = 0;
    std::size_t mn_dim = 0;
    std::size_t image_dim = 0;   ///< image of the first map in H_BC
    std::size_t kernel_dim = 0;  ///< kernel of the second map
};

ExgenCheck exgen_check(const TwistedFamily& f, const Weight& w, int p, int q);

}  // namespace twistcoh
