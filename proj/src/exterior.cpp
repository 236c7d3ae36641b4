#include "twistcoh/exterior.hpp"

#include "twistcoh/errors.hpp"

#include <bit>

namespace twistcoh {

int popcount(Mask m) { return std::popcount(m); }

std::vector<Mask> subsets(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        Mask m = 0;
        for (int i : idx) m |= Mask{1} << i;
        out.push_back(m);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    // Count pairs (x in a, y in b) with x > y: each is one transposition.
    int inversions = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
        int y = std::countr_zero(rest);
        Mask above = y >= 31 ? 0 : (a >> (y + 1));
        inversions += std::popcount(above);
    }
    return (inversions % 2) ? -1 : 1;
}

void accumulate(Form& into, Mask m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = into.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

Form wedge(const Form& a, const Form& b) {
    Form out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            Scalar c = ca * cb;
            if (s < 0) c = -c;
            accumulate(out, ma | mb, c);
        }
    return out;
}

Form scaled(const Form& f, const Scalar& s) {
    Form out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : f) out.emplace(m, c * s);
    return out;
}

Form add(const Form& a, const Form& b) {
    Form out = a;
    for (const auto& [m, c] : b) accumulate(out, m, c);
    return out;
}

DegreeBasis::DegreeBasis(int n, int k) : k_(k), masks_(subsets(n, k)) {
    for (std::size_t i = 0; i < masks_.size(); ++i) index_.emplace(masks_[i], i);
}

std::size_t DegreeBasis::index(Mask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw DimensionError("monomial not in this degree basis");
    return it->second;
}

Vector DegreeBasis::to_vector(const Form& f) const {
    Vector v(masks_.size());
    for (const auto& [m, c] : f) v[index(m)] = c;
    return v;
}

Form DegreeBasis::to_form(const Vector& v) const {
    if (v.size() != masks_.size()) throw DimensionError("coordinate vector length mismatch");
    Form f;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) f.emplace(masks_[i], v[i]);
    return f;
}

std::string monomial_label(Mask m, const std::string& stem) {
    if (m == 0) return "1";
    std::string out;
    for (Mask rest = m; rest; rest &= rest - 1) {
        if (!out.empty()) out += "^";
        out += stem + std::to_string(std::countr_zero(rest) + 1);
    }
    return out;
}

Matrix exterior_power(const Matrix& g, int k) {
    if (g.rows() != g.cols()) throw DimensionError("exterior power of a non-square map");
    const int n = static_cast<int>(g.rows());
    std::vector<Form> images(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (!g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).is_zero())
                images[static_cast<std::size_t>(j)].emplace(Mask{1} << i, g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    DegreeBasis basis(n, k);
    Matrix out(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        Form acc{{0, Scalar(1)}};
        for (Mask rest = basis.masks()[col]; rest; rest &= rest - 1)
            acc = wedge(acc, images[static_cast<std::size_t>(std::countr_zero(rest))]);
        for (const auto& [m, c] : acc) out(basis.index(m), col) = c;
    }
    return out;
}

}  // namespace twistcoh
