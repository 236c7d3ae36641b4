#include "twistcoh/scalar.hpp"

#include "twistcoh/errors.hpp"

#include <cctype>

namespace twistcoh {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t k = start; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
}

bool is_unsigned_literal(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string shown(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text)) throw ParseError("malformed rational '" + shown + "'");
        return Rational(parse_integer(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_unsigned_literal(den))
        throw ParseError("malformed rational '" + shown + "'");
    mpz_class d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + shown + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Scalar Scalar::inverse() const {
    if (is_rational()) return Scalar(Rational(1 / re_));
    Rational n = norm();
    return Scalar(Rational(re_ / n), Rational(-im_ / n));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (o.is_rational()) {
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

bool lex_less(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
}

std::string to_string(const Scalar& s) {
    if (s.is_rational()) return to_string(s.re());
    std::string imag;
    if (s.im() == 1)
        imag = "i";
    else if (s.im() == -1)
        imag = "-i";
    else
        imag = to_string(s.im()) + "i";
    if (sgn(s.re()) == 0) return imag;
    if (imag[0] == '-') return to_string(s.re()) + imag;
    return to_string(s.re()) + "+" + imag;
}

Scalar parse_scalar(std::string_view text) {
    const std::string shown(text);
    if (text.empty()) throw ParseError("empty scalar");
    if (text.back() != 'i') return Scalar(parse_rational(text));
    auto body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](std::string_view part) -> Rational {
        if (part.empty() || part == "+") return Rational(1);
        if (part == "-") return Rational(-1);
        return parse_rational(part);
    };
    try {
        if (split == std::string_view::npos) return Scalar(Rational(0), imag_of(body));
        return Scalar(parse_rational(body.substr(0, split)), imag_of(body.substr(split)));
    } catch (const ParseError&) {
        throw ParseError("malformed scalar '" + shown + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace twistcoh
