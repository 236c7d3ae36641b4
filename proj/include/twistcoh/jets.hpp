#pragma once

#include "twistcoh/matrix.hpp"
#include "twistcoh/poly.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistcoh {

using MultiIndex = std::vector<int>;

/// Monomials in n variables of total degree <= D, grouped by degree
/// (ascending); inside a degree, exponent vectors in descending lexicographic
/// order (X1^d first).
class MonomialTable {
public:
    MonomialTable(int n, int max_degree);

    int variables() const { return n_; }
    int max_degree() const { return d_; }
    std::size_t size() const { return exps_.size(); }
    const MultiIndex& exponents(std::size_t i) const { return exps_[i]; }
    int degree(std::size_t i) const { return degrees_[i]; }
    /// Throws DimensionError for a wrong-length or out-of-range index.
    std::size_t index(const MultiIndex& e) const;
    std::size_t degree_begin(int d) const { return begin_.at(static_cast<std::size_t>(d)); }
    std::size_t degree_end(int d) const { return begin_.at(static_cast<std::size_t>(d) + 1); }

private:
    int n_;
    int d_;
    std::vector<MultiIndex> exps_;
    std::vector<int> degrees_;
    std::vector<std::size_t> begin_;
    std::map<MultiIndex, std::size_t> index_;
};

/// Power series in X1..Xn truncated above total degree D.
class TruncatedSeries {
public:
    TruncatedSeries(int n, int max_degree);

    static TruncatedSeries constant(int n, int max_degree, const Scalar& c);
    static TruncatedSeries variable(int n, int max_degree, int i);
    static TruncatedSeries monomial(int n, int max_degree, const MultiIndex& e, const Scalar& c = Scalar(1));

    int variables() const { return table_->variables(); }
    int max_degree() const { return table_->max_degree(); }
    const MonomialTable& table() const { return *table_; }

    /// Zero for multi-indices above the cutoff.
    Scalar coefficient(const MultiIndex& e) const;
    void set(const MultiIndex& e, const Scalar& c);
    const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
    Scalar& operator[](std::size_t i) { return coeffs_[i]; }

    bool is_zero() const;
    /// Same coefficients with a lower cutoff.
    TruncatedSeries truncated(int max_degree) const;
    /// Nonzero terms as multi-index -> coefficient.
    std::map<MultiIndex, Scalar> terms() const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const Scalar& s);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const Scalar& s) { return a *= s; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

    /// "-30*X1*X2 + X1^2"; "0" when empty.
    std::string to_string() const;

private:
    void check_compatible(const TruncatedSeries& o) const;
    std::shared_ptr<const MonomialTable> table_;
    std::vector<Scalar> coeffs_;
};

/// Parses "X1*X2/6 - 3*X1^2 + 1/5" style polynomials in X1..Xn.
TruncatedSeries parse_series(const std::string& text, int n, int max_degree);

/// The substitution f -> f(S_1, ..., S_n).
class JetAutomorphism {
public:
    /// Throws DimensionError when the series disagree in shape or have a
    /// constant term, PreconditionError when the linear part is singular.
    explicit JetAutomorphism(std::vector<TruncatedSeries> substitution);
    /// Linear substitution S_i = sum_j l(i, j) X_j.
    static JetAutomorphism linear(const Matrix& l, int max_degree);

    int variables() const { return static_cast<int>(s_.size()); }
    int max_degree() const { return s_.front().max_degree(); }
    const std::vector<TruncatedSeries>& substitution() const { return s_; }
    /// l(i, j) = dS_i/dX_j at 0.
    const Matrix& linear_part() const { return l_; }

private:
    std::vector<TruncatedSeries> s_;
    Matrix l_;
};

/// f(S_1, ..., S_n) truncated at f's cutoff, which must not exceed t's.
TruncatedSeries substitute(const TruncatedSeries& f, const JetAutomorphism& t);

struct Eigenvalues {
    std::vector<RationalRoot> rational;  ///< ascending, with algebraic multiplicity
    std::vector<Poly> residual_factors;  ///< squarefree factor carrying the other eigenvalues
};

Eigenvalues linear_eigenvalues(const JetAutomorphism& t);

struct MonoidElement {
    Rational value;
    MultiIndex exponents;  ///< one exponent per generator
};

struct SpectrumMonoid {
    std::vector<Rational> generators;  ///< distinct, ascending
    int bound = 0;                     ///< maximal total exponent enumerated
    std::vector<MonoidElement> elements;  ///< ascending by value, duplicates merged
};

/// Products of the generators with total exponent at most `bound`.
SpectrumMonoid make_monoid(std::vector<Rational> generators, int bound);
/// Monoid of the distinct eigenvalues of the linear part; UnsupportedError
/// when some eigenvalue is not rational.
SpectrumMonoid spectrum(const JetAutomorphism& t, int bound);

/// The x with t(x) - lambda x = y modulo degree > D, solving each homogeneous
/// degree exactly. Throws SingularityError naming the first degree where
/// t - lambda is not invertible (with the offending multi-index when the
/// linear part is diagonal).
TruncatedSeries resolvent_solve(const JetAutomorphism& t, const Scalar& lambda, const TruncatedSeries& y, int max_degree);

struct Membership {
    bool member = false;
    /// True when the verdict is proved: always for members; for non-members
    /// only when all generators other than +-1 lie on one side of 1 in absolute value.
    bool complete = false;
    std::optional<MultiIndex> witness;
    /// Total exponent searched up to.
    int searched_bound = 0;
};

Membership monoid_member(const Scalar& lambda, const SpectrumMonoid& s);

}  // namespace twistcoh
