#pragma once

// Random generators and independent oracles shared by the unit tests.

#include "twistcoh/matrix.hpp"
#include "twistcoh/model.hpp"
#include "twistcoh/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using namespace twistcoh;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(0x7477697374636f68ULL);
    return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational random_rational(int num, int den) {
    Rational q(uniform(-num, num), uniform(1, den));
    q.canonicalize();
    return q;
}

inline Rational random_nonzero_rational(int num, int den) {
    for (;;) {
        Rational q = random_rational(num, den);
        if (sgn(q) != 0) return q;
    }
}

inline Scalar random_scalar(int num, int den, bool gaussian) {
    return gaussian ? Scalar(random_rational(num, den), random_rational(num, den)) : Scalar(random_rational(num, den));
}

/// Entries zero with probability about `zero_percent`/100.
inline Matrix random_matrix(std::size_t r, std::size_t c, int zero_percent = 30, bool gaussian = false) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (uniform(1, 100) > zero_percent) m(i, j) = random_scalar(5, 4, gaussian);
    return m;
}

/// Low-rank product A (r x k) * B (k x c).
inline Matrix random_low_rank(std::size_t r, std::size_t c, std::size_t k, bool gaussian = false) {
    return random_matrix(r, k, 20, gaussian) * random_matrix(k, c, 20, gaussian);
}

/// Rank by elimination choosing the last nonzero entry of each column as pivot.
inline std::size_t oracle_rank(Matrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = m.rows();
        for (std::size_t r = m.rows(); r-- > rank;)
            if (!m(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, c).is_zero()) continue;
            Scalar f = m(r, c) / m(rank, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Determinant by cofactor expansion along the first row.
inline Scalar cofactor_det(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Scalar(1);
    Scalar out(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t j = 0; j < n; ++j)
            if (j != c) cols.push_back(j);
        Scalar term = m(0, c) * cofactor_det(m.select_rows(rows).select_columns(cols));
        out += (c % 2) ? -term : term;
    }
    return out;
}

/// Parity of the permutation sorting `seq` (which has distinct entries).
inline int sort_sign(std::vector<int> seq) {
    int swaps = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
            if (seq[j] > seq[j + 1]) {
                std::swap(seq[j], seq[j + 1]);
                ++swaps;
            }
    return swaps % 2 ? -1 : 1;
}

/// All increasing k-tuples of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// d - alpha theta on k-forms, assembled from the structure constants with
/// explicit index sequences (no bit masks, no shared wedge code).
inline Matrix oracle_twisted_d(const Model& m, int k, const Scalar& alpha) {
    auto from = tuples(m.dim, k), to = tuples(m.dim, k + 1);
    auto find = [&](std::vector<int> seq, int& sign) -> std::ptrdiff_t {
        std::vector<int> sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return -1;
        sign = sort_sign(seq);
        return std::find(to.begin(), to.end(), sorted) - to.begin();
    };
    Matrix out(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        const auto& idx = from[c];
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (const auto& t : m.structure) {
                if (t.k != idx[r]) continue;
                std::vector<int> seq(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(r));
                seq.push_back(t.i);
                seq.push_back(t.j);
                seq.insert(seq.end(), idx.begin() + static_cast<std::ptrdiff_t>(r) + 1, idx.end());
                int sign = 1;
                auto row = find(seq, sign);
                if (row < 0) continue;
                Scalar v(t.coeff);
                if ((r % 2 == 1) != (sign < 0)) v = -v;
                out(static_cast<std::size_t>(row), c) += v;
            }
        for (int i = 0; i < m.dim; ++i) {
            if (sgn(m.theta[static_cast<std::size_t>(i)]) == 0) continue;
            std::vector<int> seq{i};
            seq.insert(seq.end(), idx.begin(), idx.end());
            int sign = 1;
            auto row = find(seq, sign);
            if (row < 0) continue;
            Scalar v = alpha * Scalar(m.theta[static_cast<std::size_t>(i)]);
            out(static_cast<std::size_t>(row), c) -= sign < 0 ? -v : v;
        }
    }
    return out;
}

inline std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

/// Morse-Novikov dimensions from the oracle differential and oracle ranks.
inline std::vector<std::size_t> oracle_mn_dims(const Model& m, const Scalar& alpha) {
    std::vector<std::size_t> ranks;
    for (int k = 0; k < m.dim; ++k) ranks.push_back(oracle_rank(oracle_twisted_d(m, k, alpha)));
    std::vector<std::size_t> dims;
    for (int k = 0; k <= m.dim; ++k) {
        std::size_t out = k < m.dim ? ranks[static_cast<std::size_t>(k)] : 0;
        std::size_t in = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
        dims.push_back(binom(m.dim, k) - out - in);
    }
    return dims;
}

/// Lambda^k g by k x k minors: entry (I, J) is det g[I, J].
inline Matrix oracle_exterior_power(const Matrix& g, int k) {
    auto idx = tuples(static_cast<int>(g.rows()), k);
    Matrix out(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) {
            Matrix sub(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    sub(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
                        g(static_cast<std::size_t>(idx[r][static_cast<std::size_t>(a)]),
                          static_cast<std::size_t>(idx[c][static_cast<std::size_t>(b)]));
            out(r, c) = cofactor_det(sub);
        }
    return out;
}

/// Total Bott-Chern dimension in degree k, computed in the real basis with
/// d^c = I d I^{-1} and I^{-1} = (-1)^k I on k-forms.
inline std::size_t oracle_bc_total(const Model& m, int k, const Scalar& alpha) {
    const int n = m.dim;
    auto d = [&](int j) {
        if (j < 0 || j >= n) return Matrix(binom(n, j + 1), binom(n, j));
        return oracle_twisted_d(m, j, alpha);
    };
    auto dc = [&](int j) {
        if (j < 0 || j >= n) return Matrix(binom(n, j + 1), binom(n, j));
        Matrix out = oracle_exterior_power(m.j, j + 1) * oracle_twisted_d(m, j, alpha) * oracle_exterior_power(m.j, j);
        return j % 2 ? out * Scalar(-1) : out;
    };
    Matrix stacked = vstack(d(k), dc(k));
    std::size_t kernel = binom(n, k) - oracle_rank(stacked);
    std::size_t image = k >= 2 ? oracle_rank(d(k - 1) * dc(k - 2)) : 0;
    return kernel - image;
}

/// A random rational matrix commuting with J: g = sum of random combinations
/// of powers of J plus a random J-linear perturbation, retried until invertible.
inline Matrix random_j_commuting(const Matrix& j) {
    const std::size_t n = j.rows();
    for (;;) {
        Matrix x = random_matrix(n, n, 40);
        // x - J x J commutes with J whenever J^2 = -1.
        Matrix g = x - j * x * j;
        if (oracle_rank(g) == n) return g;
    }
}

}  // namespace testsupport
