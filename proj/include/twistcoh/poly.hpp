#pragma once

#include "twistcoh/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twistcoh {

/// Univariate polynomial over Q(i); coefficients stored low degree first with
/// no trailing zeros, so the zero polynomial has an empty coefficient list.
class Poly {
public:
    Poly() = default;
    Poly(const Scalar& c);
    explicit Poly(std::vector<Scalar> coeffs);

    static Poly x();
    /// c0 + c1 x
    static Poly linear(const Scalar& c0, const Scalar& c1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar coeff(int k) const;
    const Scalar& leading() const { return coeffs_.back(); }

    Scalar eval(const Scalar& at) const;
    Poly derivative() const;
    Poly monic() const;
    Poly conj() const;
    Poly real_part() const;
    Poly imag_part() const;
    bool is_rational() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Scalar& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) = default;

    std::string to_string(const std::string& var = "a") const;

private:
    void trim();
    std::vector<Scalar> coeffs_;
};

/// Euclidean division; throws std::domain_error for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Exact quotient; throws PreconditionError if b does not divide a.
Poly exact_quotient(const Poly& a, const Poly& b);
/// Monic gcd (zero only when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly squarefree_part(const Poly& f);

struct RationalRoot {
    Rational value;
    int multiplicity = 0;
};

struct RootSplit {
    std::vector<RationalRoot> roots;  ///< sorted ascending
    Poly residual;                    ///< f with all rational linear factors removed, made monic
};

/// Rational roots of f (with multiplicity) by the rational-root test. For
/// Gaussian coefficients the rational roots are those of gcd(Re f, Im f).
RootSplit split_rational_roots(const Poly& f);

}  // namespace twistcoh
