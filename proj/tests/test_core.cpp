#include "support.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/pencil.hpp"

#include <doctest.h>

using namespace twistcoh;
using namespace testsupport;

namespace {

Scalar q(long p, long d = 1) { return Scalar(Rational(p, d)); }

Vector vec(std::initializer_list<Scalar> v) { return Vector(v); }

}  // namespace

TEST_CASE("rationals are reduced and parse strictly") {
    Rational a = parse_rational("-6/4");
    CHECK(to_string(a) == "-3/2");
    CHECK(a.get_den() == 2);
    CHECK(to_string(parse_rational("-12")) == "-12");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("6/-4"), ParseError);
}

TEST_CASE("gaussian scalars") {
    Scalar z(Rational(1, 2), Rational(-3));
    CHECK(to_string(z) == "1/2-3i");
    CHECK(parse_scalar(to_string(z)) == z);
    CHECK(parse_scalar("i") == Scalar::i());
    CHECK(parse_scalar("-i") == -Scalar::i());
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(z.norm() == Rational(37, 4));
    for (int t = 0; t < 200; ++t) {
        Scalar a = random_scalar(9, 7, true), b = random_scalar(9, 7, true);
        CHECK(parse_scalar(to_string(a)) == a);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(2)) == 2);
    CHECK(rank(Matrix(3, 4)) == 0);
    CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(Matrix::identity(3)).dim() == 0);
    CHECK(kernel_basis(Matrix(2, 2)).dim() == 2);
    Subspace k = kernel_basis(Matrix{{1, 1}});
    REQUIRE(k.dim() == 1);
    CHECK(k.basis()[0] == vec({1, -1}));
}

TEST_CASE("image examples") {
    CHECK(image_subspace(Matrix::identity(3)) == Subspace::full(3));
    CHECK(image_subspace(Matrix(3, 2)).dim() == 0);
    Subspace im = image_subspace(Matrix{{1}, {2}});
    REQUIRE(im.dim() == 1);
    CHECK(im.basis()[0] == vec({1, 2}));
}

TEST_CASE("intersection examples") {
    Subspace a = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
    Subspace b = Subspace::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
    CHECK(intersect(a, a) == a);
    CHECK(intersect(Subspace::span(2, {vec({1, 0})}), Subspace::span(2, {vec({1, 1})})).dim() == 0);
    CHECK(intersect(a, b) == Subspace::span(3, {vec({0, 1, 0})}));
    CHECK_THROWS_AS(intersect(a, Subspace::full(2)), DimensionError);
}

TEST_CASE("quotient dimension examples") {
    Subspace a = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
    CHECK(quotient_dim(a, a) == 0);
    CHECK(quotient_dim(Subspace::full(3), Subspace(3)) == 3);
    CHECK(quotient_dim(a, Subspace::span(3, {vec({1, 0, 0})})) == 1);
    CHECK_THROWS_AS(quotient_dim(Subspace::span(3, {vec({1, 0, 0})}), a), PreconditionError);
}

TEST_CASE("random matrices: rank-nullity, oracle rank, determinism") {
    for (int t = 0; t < 60; ++t) {
        std::size_t r = static_cast<std::size_t>(uniform(1, 7)), c = static_cast<std::size_t>(uniform(1, 7));
        bool gaussian = t % 3 == 0;
        Matrix m = t % 2 ? random_matrix(r, c, 40, gaussian)
                         : random_low_rank(r, c, static_cast<std::size_t>(uniform(0, 3)), gaussian);
        std::size_t rk = rank(m);
        CHECK(rk == oracle_rank(m));
        Subspace k = kernel_basis(m);
        CHECK(k.dim() + rk == c);
        for (const auto& v : k.basis()) CHECK(is_zero(m * v));
        Subspace im = image_subspace(m);
        CHECK(im.dim() == rk);
        for (std::size_t j = 0; j < c; ++j) CHECK(im.contains(m.column(j)));
        CHECK(kernel_basis(m) == k);
        CHECK(image_subspace(m) == im);
    }
}

TEST_CASE("random subspaces: intersection and sum dimensions") {
    for (int t = 0; t < 60; ++t) {
        std::size_t n = static_cast<std::size_t>(uniform(1, 6));
        Subspace a = image_subspace(random_low_rank(n, 4, static_cast<std::size_t>(uniform(0, 4)), t % 2));
        Subspace b = image_subspace(random_low_rank(n, 4, static_cast<std::size_t>(uniform(0, 4)), t % 2));
        Subspace i = intersect(a, b);
        CHECK(i.dim() == a.dim() + b.dim() - sum(a, b).dim());
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        CHECK(sum(a, b).contains(a));
        auto reps = quotient_representatives(a, i);
        CHECK(reps.size() == quotient_dim(a, i));
        for (const auto& v : reps) CHECK(!i.contains(v));
    }
}

TEST_CASE("solve, inverse and determinant agree with cofactor expansion") {
    for (int t = 0; t < 40; ++t) {
        std::size_t n = static_cast<std::size_t>(uniform(1, 5));
        Matrix m = random_matrix(n, n, 25, t % 2);
        Scalar det = cofactor_det(m);
        CHECK(determinant(m) == det);
        if (det.is_zero()) {
            CHECK_THROWS_AS(inverse(m), PreconditionError);
            continue;
        }
        CHECK(inverse(m) * m == Matrix::identity(n));
        Vector b(n);
        for (auto& x : b) x = random_scalar(5, 3, false);
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m * *x == b);
    }
    CHECK_FALSE(solve(Matrix{{1, 1}, {1, 1}}, vec({1, 2})).has_value());
}

TEST_CASE("image within coordinates") {
    // Columns (1,1,0) and (0,1,1): the only combination vanishing on the
    // last coordinate is a multiple of the first column.
    Matrix m{{1, 0}, {1, 1}, {0, 1}};
    Subspace s = image_within_coordinates(m, {0, 1});
    REQUIRE(s.dim() == 1);
    CHECK(s.basis()[0] == vec({1, 1}));
}

TEST_CASE("polynomial arithmetic") {
    Poly x = Poly::x();
    Poly f = (x - Poly(q(1, 2))) * (x - Poly(q(1, 2))) * (x + Poly(q(3))) * (x * x + Poly(q(2)));
    auto [quo, rem] = divmod(f, x * x + Poly(q(2)));
    CHECK(rem.is_zero());
    CHECK(quo * (x * x + Poly(q(2))) == f);
    CHECK(gcd(f, f.derivative()) == (x - Poly(q(1, 2))));
    RootSplit split = split_rational_roots(f);
    REQUIRE(split.roots.size() == 2);
    CHECK(split.roots[0].value == -3);
    CHECK(split.roots[0].multiplicity == 1);
    CHECK(split.roots[1].value == Rational(1, 2));
    CHECK(split.roots[1].multiplicity == 2);
    CHECK(split.residual == x * x + Poly(q(2)));
    CHECK_THROWS_AS(exact_quotient(f, x - Poly(q(5))), PreconditionError);
}

TEST_CASE("random polynomials: root split reassembles the input") {
    for (int t = 0; t < 40; ++t) {
        Poly x = Poly::x();
        Poly f(Scalar(random_nonzero_rational(5, 3)));
        int roots = uniform(0, 3);
        for (int i = 0; i < roots; ++i) f *= x - Poly(Scalar(random_rational(4, 3)));
        if (uniform(0, 1)) f *= x * x + Poly(Scalar(Rational(uniform(1, 5))));
        if (t % 4 == 0) f *= Poly::linear(Scalar::i(), Scalar(1));
        RootSplit s = split_rational_roots(f);
        Poly rebuilt = s.residual * f.leading();
        for (const auto& r : s.roots)
            for (int k = 0; k < r.multiplicity; ++k) rebuilt *= x - Poly(Scalar(r.value));
        CHECK(rebuilt == f);
        for (const auto& r : s.roots) CHECK(f.eval(Scalar(r.value)).is_zero());
    }
}

TEST_CASE("pencil exceptional set examples") {
    ExceptionalSet a = pencil_exceptional_set(Pencil::affine(Matrix::identity(2), Matrix(2, 2)));
    CHECK(a.generic_rank == 2);
    CHECK(a.rational_roots.empty());
    CHECK(a.residual_factors.empty());

    ExceptionalSet b = pencil_exceptional_set(Pencil::affine(Matrix{{0, 0}, {0, 1}}, Matrix{{1, 0}, {0, 0}}));
    CHECK(b.generic_rank == 2);
    CHECK(b.rational_roots == std::vector<Rational>{Rational(0)});

    ExceptionalSet c = pencil_exceptional_set(Pencil::affine(Matrix{{1, 0}, {0, 2}}, Matrix::identity(2) * Scalar(-1)));
    CHECK(c.rational_roots == std::vector<Rational>{Rational(1), Rational(2)});

    ExceptionalSet d = pencil_exceptional_set(Pencil::affine(Matrix{{0, -2}, {1, 0}}, Matrix::identity(2)));
    CHECK(d.rational_roots.empty());
    REQUIRE(d.residual_factors.size() == 1);
    CHECK(d.residual_factors[0] == Poly::x() * Poly::x() + Poly(q(2)));
}

namespace {

/// gcd of all maximal nonzero minors, by cofactor expansion over Q(i)[a]
/// evaluated through interpolation-free polynomial arithmetic.
Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly(Scalar(1));
    Poly out;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[r][j]);
            minor.push_back(row);
        }
        Poly term = m[0][c] * poly_det(minor);
        out += (c % 2) ? -term : term;
    }
    return out;
}

Poly oracle_minor_gcd(const Pencil& p, std::size_t rank) {
    Poly g;
    auto rows = tuples(static_cast<int>(p.rows()), static_cast<int>(rank));
    auto cols = tuples(static_cast<int>(p.cols()), static_cast<int>(rank));
    for (const auto& rs : rows)
        for (const auto& cs : cols) {
            std::vector<std::vector<Poly>> m;
            for (int r : rs) {
                std::vector<Poly> row;
                for (int c : cs) row.push_back(p(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
                m.push_back(row);
            }
            g = gcd(g, poly_det(m));
        }
    return g;
}

}  // namespace

TEST_CASE("random pencils: generic rank, rank drops and minor gcd oracle") {
    for (int t = 0; t < 40; ++t) {
        std::size_t r = static_cast<std::size_t>(uniform(1, 4)), c = static_cast<std::size_t>(uniform(1, 4));
        bool gaussian = t % 5 == 0;
        Matrix a = t % 2 ? random_matrix(r, c, 50, gaussian) : random_low_rank(r, c, 2, gaussian);
        Matrix b = random_low_rank(r, c, static_cast<std::size_t>(uniform(0, 2)), gaussian);
        Pencil p = Pencil::affine(a, b);
        ExceptionalSet e = pencil_exceptional_set(p);

        std::size_t sampled = 0;
        for (int s = 0; s < 25; ++s) {
            Scalar alpha(random_rational(40, 17));
            std::size_t rk = rank(p.at(alpha));
            CHECK(rk <= e.generic_rank);
            bool exceptional =
                std::find(e.rational_roots.begin(), e.rational_roots.end(), alpha.re()) != e.rational_roots.end();
            for (const auto& f : e.residual_factors) exceptional = exceptional || f.eval(alpha).is_zero();
            if (!exceptional) CHECK(rk == e.generic_rank);
            sampled = std::max(sampled, rk);
        }
        CHECK(sampled == e.generic_rank);
        for (const auto& root : e.rational_roots) CHECK(rank(p.at(Scalar(root))) < e.generic_rank);

        if (e.generic_rank == 0) continue;
        Poly g = oracle_minor_gcd(p, e.generic_rank);
        RootSplit split = split_rational_roots(g);
        std::vector<Rational> oracle_roots;
        for (const auto& x : split.roots) oracle_roots.push_back(x.value);
        CHECK(oracle_roots == e.rational_roots);
        CHECK(diagonalize(p).divisor == g);
    }
}

TEST_CASE("characteristic polynomial matches det(xI - M) at sample points") {
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(uniform(1, 4));
        Matrix m = random_matrix(n, n, 30, t % 3 == 0);
        Poly chi = characteristic_polynomial(m);
        CHECK(chi.degree() == static_cast<int>(n));
        for (int s = 0; s < 4; ++s) {
            Scalar x = random_scalar(7, 5, false);
            CHECK(chi.eval(x) == cofactor_det(Matrix::identity(n) * x - m));
        }
    }
}

TEST_CASE("quadratic pencils from products") {
    // (a I) * (a I - diag(1,2)): rank drops at 0, 1, 2.
    Pencil left = Pencil::affine(Matrix(2, 2), Matrix::identity(2));
    Pencil right = Pencil::affine(Matrix{{-1, 0}, {0, -2}}, Matrix::identity(2));
    ExceptionalSet e = pencil_exceptional_set(left * right);
    CHECK(e.generic_rank == 2);
    CHECK(e.rational_roots == std::vector<Rational>{Rational(0), Rational(1), Rational(2)});
}
