#include "twistcoh/poly.hpp"

#include "twistcoh/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace twistcoh {

Poly::Poly(const Scalar& c) {
    if (!c.is_zero()) coeffs_.push_back(c);
}

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

Poly Poly::linear(const Scalar& c0, const Scalar& c1) { return Poly(std::vector<Scalar>{c0, c1}); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Scalar Poly::eval(const Scalar& at) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= at;
        acc += *it;
    }
    return acc;
}

Poly Poly::derivative() const {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Scalar(static_cast<long>(k)));
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly m = *this;
    Scalar inv = leading().inverse();
    for (auto& c : m.coeffs_) c *= inv;
    return m;
}

Poly Poly::conj() const {
    std::vector<Scalar> c;
    for (const auto& x : coeffs_) c.push_back(x.conj());
    return Poly(std::move(c));
}

Poly Poly::real_part() const {
    std::vector<Scalar> c;
    for (const auto& x : coeffs_) c.emplace_back(x.re());
    return Poly(std::move(c));
}

Poly Poly::imag_part() const {
    std::vector<Scalar> c;
    for (const auto& x : coeffs_) c.emplace_back(x.im());
    return Poly(std::move(c));
}

bool Poly::is_rational() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_rational(); });
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Scalar> p(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) continue;
        for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
            if (!o.coeffs_[b].is_zero()) p[a + b] += coeffs_[a] * o.coeffs_[b];
    }
    coeffs_ = std::move(p);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Poly Poly::operator-() const {
    Poly n = *this;
    for (auto& c : n.coeffs_) c = -c;
    return n;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs = twistcoh::to_string(c);
        bool compound = !c.is_rational() && sgn(c.re()) != 0;
        if (compound) cs = "(" + cs + ")";
        bool negative = !compound && cs[0] == '-';
        if (!out.empty()) out += negative ? " - " : " + ";
        else if (negative) out += "-";
        if (negative) cs = cs.substr(1);
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        if (k == 0)
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += cs + "*" + mono;
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Scalar> rem = a.coeffs();
    std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    Scalar inv = b.leading().inverse();
    const auto& bc = b.coeffs();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Scalar f = rem[static_cast<std::size_t>(k + b.degree())] * inv;
        if (f.is_zero()) continue;
        quo[static_cast<std::size_t>(k)] = f;
        for (std::size_t j = 0; j < bc.size(); ++j)
            if (!bc[j].is_zero()) rem[static_cast<std::size_t>(k) + j] -= f * bc[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly exact_quotient(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw PreconditionError("inexact polynomial division");
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly squarefree_part(const Poly& f) {
    if (f.degree() <= 0) return f.monic();
    return exact_quotient(f, gcd(f, f.derivative())).monic();
}

namespace {

constexpr std::uint64_t kDivisorSearchLimit = 1'000'000'000'000ULL;

std::vector<std::uint64_t> positive_divisors(const mpz_class& value) {
    mpz_class v = abs(value);
    if (v > mpz_class(std::to_string(kDivisorSearchLimit)))
        throw UnsupportedError("rational-root test: coefficient " + v.get_str() + " too large to factor");
    std::uint64_t n = std::stoull(v.get_str());
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Distinct rational roots of a nonzero polynomial with rational coefficients.
std::vector<Rational> rational_roots_of(const Poly& g) {
    std::vector<Rational> roots;
    if (g.degree() <= 0) return roots;
    // Clear denominators.
    mpz_class lcm_den = 1;
    for (const auto& c : g.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.re().get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : g.coeffs()) ints.push_back(mpz_class(c.re() * lcm_den));
    std::size_t low = 0;
    while (ints[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    if (ints.size() - low <= 1) return roots;
    mpz_class content = 0;
    for (std::size_t k = low; k < ints.size(); ++k)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[k].get_mpz_t());
    const mpz_class a0 = ints[low] / content;
    const mpz_class an = ints.back() / content;
    Poly stripped(std::vector<Scalar>(g.coeffs().begin() + static_cast<std::ptrdiff_t>(low), g.coeffs().end()));
    for (auto p : positive_divisors(a0)) {
        for (auto q : positive_divisors(an)) {
            if (std::gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rational cand(mpz_class(std::to_string(p)) * sign, mpz_class(std::to_string(q)));
                cand.canonicalize();
                if (stripped.eval(Scalar(cand)).is_zero()) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end(), RationalLess{});
    return roots;
}

}  // namespace

RootSplit split_rational_roots(const Poly& f) {
    RootSplit out;
    if (f.is_zero()) throw PreconditionError("rational roots of the zero polynomial are undefined");
    Poly g = f.is_rational() ? f : gcd(f.real_part(), f.imag_part());
    Poly rest = f;
    for (const auto& r : rational_roots_of(g)) {
        Poly lin = Poly::linear(Scalar(Rational(-r)), Scalar(1));
        int mult = 0;
        while (true) {
            auto [q, rem] = divmod(rest, lin);
            if (!rem.is_zero()) break;
            rest = std::move(q);
            ++mult;
        }
        out.roots.push_back({r, mult});
    }
    out.residual = rest.monic();
    return out;
}

}  // namespace twistcoh
