#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace twistcoh {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (no decimals, no whitespace inside). Throws
/// ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& q);

/// Total order on rationals, usable as a comparator.
struct RationalLess {
    bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

/// Exact element of Q(i). Every matrix entry in the library is a Scalar; the
/// imaginary part stays zero unless a computation leaves the rationals.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    Scalar(const Rational& re) : re_(re) { re_.canonicalize(); }
    Scalar(const Rational& re, const Rational& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_rational() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, Rational(-im_)); }
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(Rational(-re_), Rational(-im_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    /// Lexicographic (re, im); only meant for canonical sorting.
    friend bool lex_less(const Scalar& a, const Scalar& b);

private:
    Rational re_{0};
    Rational im_{0};
};

/// "a", "bi", "a+bi", "a-bi" with canonical rational parts; "i" and "-i" for unit imaginary.
std::string to_string(const Scalar& s);

/// Accepts rational strings and the Gaussian forms produced by to_string.
Scalar parse_scalar(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace twistcoh
