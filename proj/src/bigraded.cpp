#include "twistcoh/bigraded.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/linalg.hpp"

#include <bit>

namespace twistcoh {

namespace {

std::string join_witnesses(const ValidationCheck& c) {
    std::string out;
    for (const auto& w : c.witnesses) out += (out.empty() ? "" : ", ") + w;
    return out;
}

}  // namespace

BigradedBasis::BigradedBasis(const Model& model) : n_(model.dim), m_(model.dim / 2) {
    ValidationReport report = validate(model);
    for (auto name : {kCheckJSquared, kCheckIntegrable}) {
        const auto& c = report.check(name);
        if (!c.passed) throw ModelError("complex structure check " + c.constraint + " failed: " + join_witnesses(c));
    }
    Matrix phi = holomorphic_coframe(model.j);
    if (phi.cols() != static_cast<std::size_t>(m_)) throw ModelError("J has no (1,0)-coframe of half dimension");
    coframe_ = hstack(phi, phi.conj());

    for (int k = 0; k <= n_; ++k) {
        std::vector<Mask> masks;
        for (int p = 0; p <= k && p <= m_; ++p) {
            int q = k - p;
            if (q > m_) continue;
            for (Mask a : subsets(m_, p))
                for (Mask b : subsets(m_, q)) masks.push_back(a | (b << m_));
        }
        DegreeBasis lex(n_, k);
        std::vector<std::size_t> order;
        for (Mask mask : masks) order.push_back(lex.index(mask));
        Matrix q_k = exterior_power(coframe_, k).select_columns(order);
        Matrix q_inv = inverse(q_k);
        conj_.push_back(q_inv * q_k.conj());
        to_real_.push_back(std::move(q_k));
        from_real_.push_back(std::move(q_inv));
        masks_.push_back(std::move(masks));
    }
}

std::size_t BigradedBasis::degree_size(int k) const {
    if (k < 0 || k > n_) return 0;
    return masks_[static_cast<std::size_t>(k)].size();
}

namespace {

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

}  // namespace

std::size_t BigradedBasis::block_size(int p, int q) const {
    if (p < 0 || q < 0 || p > m_ || q > m_) return 0;
    return binom(m_, p) * binom(m_, q);
}

std::size_t BigradedBasis::block_offset(int p, int q) const {
    std::size_t off = 0;
    for (int p2 = 0; p2 < p; ++p2) off += block_size(p2, p + q - p2);
    return off;
}

std::vector<std::size_t> BigradedBasis::block_indices(int p, int q) const {
    std::vector<std::size_t> out;
    std::size_t off = block_offset(p, q);
    for (std::size_t i = 0; i < block_size(p, q); ++i) out.push_back(off + i);
    return out;
}

Matrix BigradedBasis::inclusion(int p, int q) const {
    Matrix e(degree_size(p + q), block_size(p, q));
    std::size_t off = block_offset(p, q);
    for (std::size_t i = 0; i < e.cols(); ++i) e(off + i, i) = 1;
    return e;
}

std::pair<int, int> BigradedBasis::bidegree(int k, std::size_t index) const {
    Mask mask = masks(k).at(index);
    Mask holo = mask & ((Mask{1} << m_) - 1);
    int p = std::popcount(holo);
    return {p, k - p};
}

Matrix BigradedBasis::to_complex(const Matrix& real_op, int k, int shift) const {
    return from_real(k + shift) * real_op * to_real(k);
}

Vector BigradedBasis::conjugate(const Vector& v, int k) const {
    if (v.size() != degree_size(k)) throw DimensionError("form length does not match degree");
    return conj_.at(static_cast<std::size_t>(k)) * conj(v);
}

std::string BigradedBasis::label(int k, std::size_t index) const {
    Mask mask = masks(k).at(index);
    if (mask == 0) return "1";
    std::string out;
    for (Mask rest = mask; rest; rest &= rest - 1) {
        int letter = std::countr_zero(rest);
        if (!out.empty()) out += "^";
        out += letter < m_ ? "phi" + std::to_string(letter + 1) : "phibar" + std::to_string(letter - m_ + 1);
    }
    return out;
}

BigradedBasis bigraded(const Model& m) { return BigradedBasis(m); }

}  // namespace twistcoh
