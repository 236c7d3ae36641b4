#include "twistcoh/jets.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/pencil.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace twistcoh {

MonomialTable::MonomialTable(int n, int max_degree) : n_(n), d_(max_degree) {
    if (n < 1) throw DimensionError("series need at least one variable");
    if (max_degree < 0) throw DimensionError("negative degree cutoff");
    MultiIndex cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int, int)> fill = [&](int pos, int left, int d) {
        if (pos == n - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            index_.emplace(cur, exps_.size());
            exps_.push_back(cur);
            degrees_.push_back(d);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = e;
            fill(pos + 1, left - e, d);
        }
    };
    for (int d = 0; d <= max_degree; ++d) {
        begin_.push_back(exps_.size());
        fill(0, d, d);
    }
    begin_.push_back(exps_.size());
}

std::size_t MonomialTable::index(const MultiIndex& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw DimensionError("multi-index outside the monomial table");
    return it->second;
}

namespace {

std::shared_ptr<const MonomialTable> shared_table(int n, int d) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, d}];
    if (!slot) slot = std::make_shared<const MonomialTable>(n, d);
    return slot;
}

int total(const MultiIndex& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

TruncatedSeries::TruncatedSeries(int n, int max_degree)
    : table_(shared_table(n, max_degree)), coeffs_(table_->size()) {}

TruncatedSeries TruncatedSeries::constant(int n, int max_degree, const Scalar& c) {
    TruncatedSeries s(n, max_degree);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::variable(int n, int max_degree, int i) {
    if (i < 0 || i >= n) throw DimensionError("variable index out of range");
    MultiIndex e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(n, max_degree, e);
}

TruncatedSeries TruncatedSeries::monomial(int n, int max_degree, const MultiIndex& e, const Scalar& c) {
    TruncatedSeries s(n, max_degree);
    s.set(e, c);
    return s;
}

Scalar TruncatedSeries::coefficient(const MultiIndex& e) const {
    if (e.size() != static_cast<std::size_t>(variables())) throw DimensionError("multi-index length mismatch");
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) throw DimensionError("negative exponent");
    if (total(e) > max_degree()) return Scalar(0);
    return coeffs_[table_->index(e)];
}

void TruncatedSeries::set(const MultiIndex& e, const Scalar& c) {
    if (e.size() != static_cast<std::size_t>(variables())) throw DimensionError("multi-index length mismatch");
    if (total(e) > max_degree()) return;
    coeffs_[table_->index(e)] = c;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

TruncatedSeries TruncatedSeries::truncated(int max_degree) const {
    if (max_degree > this->max_degree()) throw DimensionError("cannot raise a truncation cutoff");
    TruncatedSeries out(variables(), max_degree);
    std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
    return out;
}

std::map<MultiIndex, Scalar> TruncatedSeries::terms() const {
    std::map<MultiIndex, Scalar> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) out.emplace(table_->exponents(i), coeffs_[i]);
    return out;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (variables() != o.variables() || max_degree() != o.max_degree())
        throw DimensionError("series differ in variable count or cutoff");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    const MonomialTable& t = *a.table_;
    const int d = t.max_degree();
    TruncatedSeries out(a.variables(), d);
    MultiIndex e(static_cast<std::size_t>(t.variables()));
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        const auto& ei = t.exponents(i);
        for (std::size_t j = 0; j < t.degree_end(d - t.degree(i)); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            const auto& ej = t.exponents(j);
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ei[v] + ej[v];
            out.coeffs_[t.index(e)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.variables() == b.variables() && a.max_degree() == b.max_degree() && a.coeffs_ == b.coeffs_;
}

std::string TruncatedSeries::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Scalar& c = coeffs_[i];
        if (c.is_zero()) continue;
        const auto& e = table_->exponents(i);
        std::string mono;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "X" + std::to_string(v + 1);
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        std::string coef = twistcoh::to_string(c);
        bool negative = c.is_rational() && sgn(c.re()) < 0;
        if (negative) coef = twistcoh::to_string(-c);
        if (!c.is_rational()) coef = "(" + coef + ")";
        std::string term = mono.empty() ? coef : (coef == "1" ? mono : coef + "*" + mono);
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += negative ? " - " + term : " + " + term;
    }
    return out.empty() ? "0" : out;
}

TruncatedSeries parse_series(const std::string& text, int n, int max_degree) {
    TruncatedSeries out(n, max_degree);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("series '" + text + "': " + why + " at offset " + std::to_string(pos));
    };
    auto integer = [&] {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw fail("expected an integer");
        return mpz_class(text.substr(start, pos - start));
    };
    skip();
    if (pos == text.size()) throw fail("empty series");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        Rational coeff(1);
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') coeff = -1;
            ++pos;
        } else if (!first) {
            throw fail("expected + or -");
        }
        first = false;
        MultiIndex e(static_cast<std::size_t>(n), 0);
        bool want_factor = true;
        while (true) {
            skip();
            if (want_factor) {
                if (pos < text.size() && (text[pos] == 'X' || text[pos] == 'x')) {
                    ++pos;
                    long v = integer().get_si();
                    if (v < 1 || v > n) throw fail("variable index out of range");
                    int power = 1;
                    skip();
                    if (pos < text.size() && text[pos] == '^') {
                        ++pos;
                        power = static_cast<int>(integer().get_si());
                    }
                    e[static_cast<std::size_t>(v - 1)] += power;
                } else {
                    coeff *= Rational(integer());
                }
                want_factor = false;
                continue;
            }
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                want_factor = true;
            } else if (pos < text.size() && text[pos] == '/') {
                ++pos;
                mpz_class den = integer();
                if (den == 0) throw fail("zero denominator");
                coeff /= Rational(den);
            } else {
                break;
            }
        }
        if (total(e) <= max_degree) out[out.table().index(e)] += Scalar(coeff);
    }
    return out;
}

JetAutomorphism::JetAutomorphism(std::vector<TruncatedSeries> substitution) : s_(std::move(substitution)) {
    if (s_.empty()) throw DimensionError("substitution needs at least one series");
    const int n = static_cast<int>(s_.size());
    const int d = s_.front().max_degree();
    for (const auto& s : s_) {
        if (s.variables() != n || s.max_degree() != d)
            throw DimensionError("substitution series must share variable count and cutoff");
        if (!s[0].is_zero()) throw DimensionError("substitution series must vanish at the origin");
    }
    if (d < 1) throw DimensionError("substitution cutoff must be at least 1");
    l_ = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            l_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                s_[static_cast<std::size_t>(i)].coefficient([&] {
                    MultiIndex e(static_cast<std::size_t>(n), 0);
                    e[static_cast<std::size_t>(j)] = 1;
                    return e;
                }());
    if (rank(l_) < static_cast<std::size_t>(n)) throw PreconditionError("linear part of the substitution is singular");
}

JetAutomorphism JetAutomorphism::linear(const Matrix& l, int max_degree) {
    const int n = static_cast<int>(l.rows());
    if (l.cols() != l.rows()) throw DimensionError("linear part must be square");
    std::vector<TruncatedSeries> s;
    for (int i = 0; i < n; ++i) {
        TruncatedSeries si(n, max_degree);
        for (int j = 0; j < n; ++j)
            si += TruncatedSeries::variable(n, max_degree, j) * l(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        s.push_back(std::move(si));
    }
    return JetAutomorphism(std::move(s));
}

TruncatedSeries substitute(const TruncatedSeries& f, const JetAutomorphism& t) {
    const int n = t.variables();
    if (f.variables() != n) throw DimensionError("series and substitution differ in variable count");
    const int d = f.max_degree();
    if (d > t.max_degree()) throw DimensionError("series cutoff exceeds the substitution cutoff");
    std::vector<std::vector<TruncatedSeries>> powers;
    for (const auto& s : t.substitution()) {
        TruncatedSeries base = s.truncated(d);
        std::vector<TruncatedSeries> p{TruncatedSeries::constant(n, d, Scalar(1))};
        for (int k = 1; k <= d; ++k) p.push_back(p.back() * base);
        powers.push_back(std::move(p));
    }
    TruncatedSeries out(n, d);
    const MonomialTable& table = f.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (f[i].is_zero()) continue;
        const auto& e = table.exponents(i);
        TruncatedSeries term = TruncatedSeries::constant(n, d, f[i]);
        for (int v = 0; v < n; ++v) {
            int k = e[static_cast<std::size_t>(v)];
            if (k > 0) term = term * powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
        }
        out += term;
    }
    return out;
}

Eigenvalues linear_eigenvalues(const JetAutomorphism& t) {
    RootSplit split = split_rational_roots(characteristic_polynomial(t.linear_part()));
    Eigenvalues out;
    out.rational = split.roots;
    if (split.residual.degree() > 0) out.residual_factors.push_back(squarefree_part(split.residual));
    return out;
}

SpectrumMonoid make_monoid(std::vector<Rational> generators, int bound) {
    if (bound < 0) throw DimensionError("monoid bound must be nonnegative");
    for (auto& g : generators) g.canonicalize();
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (const auto& g : generators)
        if (sgn(g) == 0) throw DimensionError("monoid generators must be nonzero");
    SpectrumMonoid s;
    s.generators = generators;
    s.bound = bound;
    std::map<Rational, MultiIndex, RationalLess> found;
    MultiIndex e(generators.size(), 0);
    // Total exponent ascending, then lexicographic, so the first witness is a shortest one.
    for (int t = 0; t <= bound; ++t) {
        std::function<void(std::size_t, int, const Rational&)> walk = [&](std::size_t pos, int left,
                                                                          const Rational& value) {
            if (pos + 1 >= generators.size()) {
                Rational v = value;
                if (!generators.empty()) {
                    e[pos] = left;
                    for (int k = 0; k < left; ++k) v *= generators[pos];
                } else if (left > 0) {
                    return;
                }
                found.try_emplace(v, e);
                return;
            }
            Rational v = value;
            for (int k = 0; k <= left; ++k) {
                e[pos] = k;
                walk(pos + 1, left - k, v);
                v *= generators[pos];
            }
        };
        walk(0, t, Rational(1));
    }
    for (auto& [v, w] : found) s.elements.push_back({v, w});
    return s;
}

SpectrumMonoid spectrum(const JetAutomorphism& t, int bound) {
    Eigenvalues ev = linear_eigenvalues(t);
    if (!ev.residual_factors.empty())
        throw UnsupportedError("linear part has eigenvalues outside Q (factor " + ev.residual_factors.front().to_string("x") +
                               ")");
    std::vector<Rational> gens;
    for (const auto& r : ev.rational) gens.push_back(r.value);
    return make_monoid(std::move(gens), bound);
}

namespace {

bool is_diagonal(const Matrix& l) {
    for (std::size_t r = 0; r < l.rows(); ++r)
        for (std::size_t c = 0; c < l.cols(); ++c)
            if (r != c && !l(r, c).is_zero()) return false;
    return true;
}

}  // namespace

TruncatedSeries resolvent_solve(const JetAutomorphism& t, const Scalar& lambda, const TruncatedSeries& y, int max_degree) {
    const int n = t.variables();
    if (y.variables() != n) throw DimensionError("right-hand side and substitution differ in variable count");
    if (max_degree < 0 || max_degree > y.max_degree() || max_degree > t.max_degree())
        throw DimensionError("degree cutoff exceeds the data");
    const TruncatedSeries rhs = y.truncated(max_degree);
    const MonomialTable& table = rhs.table();
    // Column i: t applied to the i-th monomial.
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < table.size(); ++i)
        images.push_back(substitute(TruncatedSeries::monomial(n, max_degree, table.exponents(i)), t));

    TruncatedSeries x(n, max_degree);
    const Matrix& l = t.linear_part();
    for (int d = 0; d <= max_degree; ++d) {
        const std::size_t b = table.degree_begin(d), e = table.degree_end(d);
        Matrix block(e - b, e - b);
        Vector target(e - b);
        for (std::size_t r = b; r < e; ++r) {
            target[r - b] = rhs[r];
            for (std::size_t c = 0; c < b; ++c)
                if (!x[c].is_zero()) target[r - b] -= images[c][r] * x[c];
            for (std::size_t c = b; c < e; ++c) block(r - b, c - b) = images[c][r];
            block(r - b, r - b) -= lambda;
        }
        if (rank(block) < block.rows()) {
            std::optional<MultiIndex> witness;
            if (is_diagonal(l))
                for (std::size_t i = b; i < e && !witness; ++i) {
                    Scalar v(1);
                    const auto& ex = table.exponents(i);
                    for (std::size_t k = 0; k < ex.size(); ++k)
                        for (int j = 0; j < ex[k]; ++j) v *= l(k, k);
                    if (v == lambda) witness = ex;
                }
            std::string where = witness ? " at multi-index (" + [&] {
                std::string s;
                for (std::size_t k = 0; k < witness->size(); ++k) s += (k ? "," : "") + std::to_string((*witness)[k]);
                return s;
            }() + ")" : "";
            throw SingularityError("t - lambda is not invertible in degree " + std::to_string(d) + where, d, witness);
        }
        auto sol = solve(block, target);
        for (std::size_t i = b; i < e; ++i) x[i] = (*sol)[i - b];
    }
    return x;
}

namespace {

/// |value| as a nonnegative rational.
Rational magnitude(const Rational& v) { return sgn(v) < 0 ? Rational(-v) : v; }

}  // namespace

Membership monoid_member(const Scalar& lambda, const SpectrumMonoid& s) {
    Membership out;
    const std::size_t g = s.generators.size();
    MultiIndex zero(g, 0);
    if (lambda.is_one()) {
        out.member = true;
        out.complete = true;
        out.witness = zero;
        return out;
    }
    if (!lambda.is_rational() || lambda.is_zero()) {
        // Products of nonzero rationals are nonzero rationals.
        out.complete = true;
        return out;
    }
    const Rational target = lambda.re();
    std::optional<std::size_t> minus_one;
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < g; ++i) {
        Rational a = magnitude(s.generators[i]);
        if (a == 1) {
            if (sgn(s.generators[i]) < 0) minus_one = i;
        } else {
            (a < 1 ? small : large).push_back(i);
        }
    }
    const bool one_sided = small.empty() || large.empty();
    const Rational goal = magnitude(target);
    std::vector<std::size_t> active = small.empty() ? large : small;
    if (!one_sided) {
        active = small;
        active.insert(active.end(), large.begin(), large.end());
    }

    // Exponent bound for the complete case: the extreme generator reaches |lambda| within K steps.
    int limit = s.bound;
    if (one_sided) {
        bool below = !small.empty();
        if (active.empty() || (below ? goal > 1 : goal < 1)) {
            limit = 0;
        } else {
            Rational extreme = magnitude(s.generators[active.front()]);
            for (auto i : active) {
                Rational a = magnitude(s.generators[i]);
                if (below ? a > extreme : a < extreme) extreme = a;
            }
            limit = 0;
            for (Rational v = extreme; below ? v >= goal : v <= goal; v *= extreme) ++limit;
        }
    }
    out.searched_bound = limit;

    MultiIndex e = zero;
    std::function<bool(std::size_t, int, const Rational&)> walk = [&](std::size_t pos, int left,
                                                                      const Rational& value) -> bool {
        if (magnitude(value) == goal) {
            bool sign_ok = value == target;
            if (!sign_ok && minus_one) {
                e[*minus_one] = 1;
                sign_ok = true;
            }
            if (sign_ok) return true;
        }
        if (pos == active.size()) return false;
        const Rational& gen = s.generators[active[pos]];
        Rational v = value;
        for (int k = 0; k <= left; ++k) {
            e[active[pos]] = k;
            if (walk(pos + 1, left - k, v)) return true;
            v *= gen;
            // Monotone pruning: on one side of 1 the magnitude only moves away from 1.
            if (one_sided && (small.empty() ? magnitude(v) > goal : magnitude(v) < goal)) break;
        }
        e[active[pos]] = 0;
        return false;
    };
    if (walk(0, limit, Rational(1))) {
        out.member = true;
        out.complete = true;
        out.witness = e;
        return out;
    }
    out.complete = one_sided;
    return out;
}

}  // namespace twistcoh
