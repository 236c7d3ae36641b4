#include "twistcoh/hopf.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/exterior.hpp"

#include <bit>
#include <functional>

namespace twistcoh {

void check(const HopfData& h) {
    if (h.n < 2) throw DimensionError("Hopf data needs n >= 2");
    if (h.beta.size() != static_cast<std::size_t>(h.n)) throw DimensionError("beta needs n entries");
    for (const auto& b : h.beta)
        if (sgn(b) <= 0 || b >= 1) throw DimensionError("beta entries must lie strictly between 0 and 1");
    if (sgn(h.alpha) <= 0) throw DimensionError("alpha must be positive");
}

namespace {

HopfData normalized(HopfData h) {
    for (auto& b : h.beta) b.canonicalize();
    h.alpha.canonicalize();
    return h;
}

}  // namespace

std::vector<MonomialForm> eigenspace(const HopfData& input, int p, Slot slot) {
    const HopfData h = normalized(input);
    check(h);
    std::vector<MonomialForm> out;
    if (p < 0 || p > h.n) return out;
    const auto n = static_cast<std::size_t>(h.n);
    for (Mask mask : subsets(h.n, p)) {
        std::vector<int> dz;
        Rational base(1);
        for (Mask rest = mask; rest; rest &= rest - 1) {
            int j = std::countr_zero(rest);
            dz.push_back(j);
            base *= h.beta[static_cast<std::size_t>(j)];
        }
        // Exponents are I (regular) or -1 - K (laurent) with K >= 0; every
        // step of K multiplies by beta_i (regular, < 1) or 1/beta_i (> 1).
        MultiIndex k(n, 0);
        if (slot == Slot::Laurent)
            for (const auto& b : h.beta) base /= b;
        const bool regular = slot == Slot::Regular;
        std::function<void(std::size_t, const Rational&)> walk = [&](std::size_t pos, const Rational& value) {
            if (pos == n) {
                if (value == h.alpha) {
                    MonomialForm f;
                    for (auto e : k) f.exponents.push_back(regular ? e : -1 - e);
                    f.dz = dz;
                    f.slot = slot;
                    f.eigenvalue = value;
                    out.push_back(std::move(f));
                }
                return;
            }
            Rational v = value;
            const Rational step = regular ? h.beta[pos] : Rational(1 / h.beta[pos]);
            for (k[pos] = 0; regular ? v >= h.alpha : v <= h.alpha; ++k[pos], v *= step) walk(pos + 1, v);
            k[pos] = 0;
        };
        walk(0, base);
    }
    return out;
}

std::vector<std::size_t> dolbeault_dims(const HopfData& h, int p) {
    check(h);
    std::vector<std::size_t> dims(static_cast<std::size_t>(h.n) + 1, 0);
    if (p < 0 || p > h.n) return dims;
    const std::size_t m0 = eigenspace(h, p, Slot::Regular).size();
    const std::size_t m1 = eigenspace(h, p, Slot::Laurent).size();
    const auto top = static_cast<std::size_t>(h.n);
    // Kernel of t - alpha on a slot lands in the same degree, the cokernel one higher.
    dims[0] += m0;
    dims[1] += m0;
    dims[top - 1] += m1;
    dims[top] += m1;
    return dims;
}

std::vector<ScanPoint> vanishing_scan(const HopfData& input, const std::vector<Rational>& grid, int bound) {
    const HopfData h = normalized(input);
    check(h);
    SpectrumMonoid monoid = make_monoid(h.beta, bound);
    std::vector<ScanPoint> out;
    for (const auto& a : grid) {
        HopfData at = h;
        at.alpha = a;
        at.alpha.canonicalize();
        ScanPoint point;
        point.alpha = at.alpha;
        for (int p = 0; p <= h.n; ++p) {
            point.dims.push_back(dolbeault_dims(at, p));
            for (auto d : point.dims.back())
                if (d) point.all_zero = false;
        }
        point.membership = monoid_member(Scalar(at.alpha), monoid);
        point.consistent = point.all_zero != point.membership.member;
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace twistcoh
