#include "support.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/exterior.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/twisted.hpp"

#include <doctest.h>

using namespace twistcoh;
using namespace testsupport;

namespace {

Weight W(long p, long q = 1) { return Weight(Scalar(Rational(p, q))); }

using Dims = std::vector<std::size_t>;

/// dims[p][q] of a Dolbeault report.
std::vector<Dims> table(const CohomologyReport& r, int m) {
    std::vector<Dims> out(static_cast<std::size_t>(m + 1), Dims(static_cast<std::size_t>(m + 1)));
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) out[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = r.dim(p, q);
    return out;
}

std::vector<Dims> bc_table(const TwistedFamily& f, const Weight& w) {
    int m = f.complex_dim();
    std::vector<Dims> out(static_cast<std::size_t>(m + 1), Dims(static_cast<std::size_t>(m + 1)));
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q)
            out[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = bott_chern(f, w, p, q).dim(p, q);
    return out;
}

Rational random_weight() { return random_rational(12, 7); }

Vector form_vector(const Form& f, int n, int k) { return DegreeBasis(n, k).to_vector(f); }

}  // namespace

TEST_CASE("calibrated dd^c constant") { CHECK(ddc_constant() == Scalar(Rational(0), Rational(2))); }

TEST_CASE("operator identities hold at random weights") {
    for (const auto& name : builtin_names()) {
        TwistedFamily f(builtin(name));
        for (int t = 0; t < 4; ++t) {
            Scalar a(random_weight(), t == 3 ? random_rational(3, 2) : Rational(0));
            TwistedOperators ops = f.at(Weight(a));  // asserts internally
            const BigradedBasis& b = f.basis();
            for (int k = 0; k < f.dim(); ++k) {
                CHECK(ops.real_d(k) == oracle_twisted_d(f.model(), k, a));
                CHECK(ops.total(k) == ops.twisted_del(k) + ops.twisted_delbar(k));
                CHECK(b.to_complex(ops.real_d(k), k, 1) == ops.total(k));
                Matrix dd = ops.twisted_del(k + 1) * ops.twisted_delbar(k) + ops.twisted_delbar(k + 1) * ops.twisted_del(k);
                CHECK(dd.is_zero());
                CHECK((ops.total(k + 1) * ops.twisted_dc(k)) == (ops.twisted_del(k + 1) * ops.twisted_delbar(k)) * ddc_constant());
                CHECK((ops.twisted_dc(k) - (ops.twisted_delbar(k) - ops.twisted_del(k)) * Scalar::i()).is_zero());
            }
        }
    }
}

TEST_CASE("Morse-Novikov examples") {
    CHECK(morse_novikov(builtin("torus2"), W(0)).degree_dims() == Dims{1, 4, 6, 4, 1});
    CHECK(morse_novikov(builtin("hopf_surface"), W(1)).degree_dims() == Dims{0, 0, 0, 0, 0});
    CHECK(morse_novikov(builtin("hopf_surface"), W(0)).degree_dims() == Dims{1, 1, 0, 1, 1});
}

TEST_CASE("Morse-Novikov agrees with the oracle and keeps Euler characteristic") {
    for (const auto& name : builtin_names()) {
        Model m = builtin(name);
        TwistedFamily f(m);
        for (int t = 0; t < 8; ++t) {
            Scalar a(t < 3 ? Rational(t) : random_weight());
            CAPTURE(name);
            CAPTURE(to_string(a));
            CohomologyReport r = morse_novikov(f, Weight(a));
            Dims dims = r.degree_dims();
            CHECK(dims == oracle_mn_dims(m, a));
            long euler = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) euler += (k % 2 ? -1 : 1) * static_cast<long>(dims[k]);
            CHECK(euler == 0);
            TwistedOperators ops = f.at(Weight(a));
            for (const auto& e : r.entries) {
                CHECK(e.representatives.size() == e.dim);
                for (const auto& v : e.representatives) CHECK(is_zero(ops.real_d(e.degree) * v));
            }
            // Poincare duality against the dual weight.
            Dims dual = morse_novikov(f, Weight(-a)).degree_dims();
            for (std::size_t k = 0; k < dims.size(); ++k) CHECK(dims[k] == dual[dims.size() - 1 - k]);
        }
    }
}

TEST_CASE("Dolbeault examples") {
    auto torus = table(dolbeault(builtin("torus2"), W(0)), 2);
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) CHECK(torus[p][q] == binom(2, p) * binom(2, q));
    auto h0 = table(dolbeault(builtin("hopf_surface"), W(0)), 2);
    CHECK(h0 == std::vector<Dims>{{1, 1, 0}, {0, 0, 0}, {0, 1, 1}});
    auto h73 = table(dolbeault(builtin("hopf_surface"), W(7, 3)), 2);
    CHECK(h73 == std::vector<Dims>{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
}

TEST_CASE("Dolbeault properties: representatives, Serre duality, Frolicher inequality") {
    for (const auto& name : builtin_names()) {
        Model m = builtin(name);
        TwistedFamily f(m);
        int half = f.complex_dim();
        for (int t = 0; t < 5; ++t) {
            Scalar a(t < 2 ? Rational(t) : random_weight());
            CAPTURE(name);
            CAPTURE(to_string(a));
            CohomologyReport r = dolbeault(f, Weight(a));
            TwistedOperators ops = f.at(Weight(a));
            for (const auto& e : r.entries)
                for (const auto& v : e.representatives) CHECK(is_zero(ops.twisted_delbar(e.degree) * v));
            auto h = table(r, half);
            auto dual = table(dolbeault(f, Weight(-a)), half);
            for (int p = 0; p <= half; ++p)
                for (int q = 0; q <= half; ++q) CHECK(h[p][q] == dual[half - p][half - q]);
            Dims mn = oracle_mn_dims(m, a);
            for (int k = 0; k <= m.dim; ++k) {
                std::size_t s = 0;
                for (int p = 0; p <= std::min(k, half); ++p)
                    if (k - p <= half) s += h[p][k - p];
                CHECK(s >= mn[static_cast<std::size_t>(k)]);
            }
        }
    }
}

TEST_CASE("Bott-Chern examples") {
    CHECK(bott_chern(builtin("torus2"), W(0), 0, 0).dim(0, 0) == 1);
    CHECK(bott_chern(builtin("hopf_surface"), W(0), 1, 1).dim(1, 1) == 1);
    TwistedFamily hopf(builtin("hopf_surface"));
    for (const auto& row : bc_table(hopf, W(7, 3)))
        for (auto v : row) CHECK(v == 0);
}

TEST_CASE("Bott-Chern totals agree with the real-basis oracle") {
    for (const auto& name : builtin_names()) {
        Model m = builtin(name);
        TwistedFamily f(m);
        int half = f.complex_dim();
        for (int t = 0; t < 4; ++t) {
            Scalar a(t < 2 ? Rational(t) : random_weight());
            CAPTURE(name);
            CAPTURE(to_string(a));
            auto bc = bc_table(f, Weight(a));
            TwistedOperators ops = f.at(Weight(a));
            for (int k = 0; k <= m.dim; ++k) {
                std::size_t total = 0;
                for (int p = 0; p <= std::min(k, half); ++p)
                    if (k - p <= half) total += bc[p][k - p];
                CHECK(total == oracle_bc_total(m, k, a));
            }
            for (int p = 0; p <= half; ++p)
                for (int q = 0; q <= half; ++q) {
                    CohomologyReport r = bott_chern(f, Weight(a), p, q);
                    for (const auto& v : r.entry(p, q).representatives) {
                        CHECK(is_zero(ops.total(p + q) * v));
                        CHECK(is_zero(ops.twisted_dc(p + q) * v));
                    }
                    if (bc[p][q] == 0) CHECK(ddc_lemma_check(f, Weight(a), p, q).holds);
                }
        }
    }
}

TEST_CASE("dd^c lemma examples") {
    TwistedFamily torus(builtin("torus2"));
    TwistedFamily hopf(builtin("hopf_surface"));
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            CHECK(ddc_lemma_check(torus, W(0), p, q).holds);
            CHECK(ddc_lemma_check(hopf, W(7, 3), p, q).holds);
        }
    DdcVerdict v = ddc_lemma_check(hopf, W(0), 1, 1);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    TwistedOperators ops = hopf.at(W(0));
    CHECK(is_zero(ops.twisted_dc(2) * *v.witness));
    CHECK(v.left_dim > v.right_dim);
}

TEST_CASE("Morse-Novikov class of the fundamental form") {
    Model torus = builtin("torus2");
    MnClass t = mn_class(torus, W(0), 2, form_vector(omega_form(torus), 4, 2));
    CHECK(t.closed);
    CHECK_FALSE(t.exact);
    CHECK_FALSE(t.class_coordinates.empty());

    Model hopf = builtin("hopf_surface");
    MnClass h = mn_class(hopf, W(1), 2, form_vector(omega_form(hopf), 4, 2));
    CHECK(h.closed);
    CHECK(h.exact);
    REQUIRE(h.primitive);
    CHECK(oracle_twisted_d(hopf, 1, Scalar(1)) * *h.primitive == form_vector(omega_form(hopf), 4, 2));

    Model inoue = builtin("inoue_sm");
    MnClass i = mn_class(inoue, W(1), 2, form_vector(omega_form(inoue), 4, 2));
    CHECK(i.closed);
    CHECK_FALSE(i.exact);
    CHECK_FALSE(i.primitive);

    MnClass open = mn_class(hopf, W(0), 2, form_vector(omega_form(hopf), 4, 2));
    CHECK_FALSE(open.closed);
    CHECK(open.class_coordinates.empty());
}

TEST_CASE("exceptional spectrum examples") {
    Model t = with_theta(builtin("torus2"), {Rational(1), Rational(0), Rational(0), Rational(0)});
    SpectrumReport s0 = exceptional_spectrum(t, {SpectrumKind::MorseNovikov, 0, std::nullopt});
    CHECK(s0.rational_roots == std::vector<Rational>{Rational(0)});
    CHECK(s0.residual_factors.empty());

    for (auto kind : {SpectrumKind::MorseNovikov, SpectrumKind::Dolbeault, SpectrumKind::BottChern, SpectrumKind::Ddc}) {
        SpectrumReport s = exceptional_spectrum(builtin("torus2"), {kind, std::nullopt, std::nullopt});
        CHECK(s.rational_roots.empty());
        CHECK(s.residual_factors.empty());
    }

    SpectrumReport h = exceptional_spectrum(builtin("hopf_surface"), {SpectrumKind::MorseNovikov, std::nullopt, std::nullopt});
    CHECK(h.contains(Scalar(0)));
    CHECK_FALSE(h.contains(Scalar(1)));
}

TEST_CASE("dimensions outside the spectrum equal the generic dimensions") {
    for (const auto& name : builtin_names()) {
        TwistedFamily f(builtin(name));
        for (auto kind : {SpectrumKind::MorseNovikov, SpectrumKind::Dolbeault, SpectrumKind::BottChern}) {
            SpectrumReport s = exceptional_spectrum(f, {kind, std::nullopt, std::nullopt});
            for (int t = 0; t < 3; ++t) {
                Scalar a(random_weight());
                if (s.contains(a)) continue;
                CAPTURE(name);
                CAPTURE(to_string(a));
                for (const auto& e : s.entries) {
                    std::size_t dim = 0;
                    if (kind == SpectrumKind::MorseNovikov) dim = oracle_mn_dims(f.model(), a)[static_cast<std::size_t>(e.degree)];
                    else if (kind == SpectrumKind::Dolbeault) dim = dolbeault(f, Weight(a)).dim(e.p, e.q);
                    else dim = bott_chern(f, Weight(a), e.p, e.q).dim(e.p, e.q);
                    CHECK(dim == e.generic_dim);
                }
            }
            // At every listed root some dimension differs from the generic one.
            for (const auto& root : s.rational_roots) {
                bool jumped = false;
                for (const auto& e : s.entries) {
                    std::size_t dim = 0;
                    if (kind == SpectrumKind::MorseNovikov) dim = oracle_mn_dims(f.model(), Scalar(root))[static_cast<std::size_t>(e.degree)];
                    else if (kind == SpectrumKind::Dolbeault) dim = dolbeault(f, Weight(Scalar(root))).dim(e.p, e.q);
                    else dim = bott_chern(f, Weight(Scalar(root)), e.p, e.q).dim(e.p, e.q);
                    jumped = jumped || dim != e.generic_dim;
                }
                CAPTURE(to_string(root));
                CHECK(jumped);
            }
        }
    }
}

TEST_CASE("cohomology is invariant under J-commuting coframe changes") {
    for (const auto& name : builtin_names()) {
        Model m = builtin(name);
        TwistedFamily f(m);
        for (int t = 0; t < 2; ++t) {
            TwistedFamily g(change_coframe(m, random_j_commuting(m.j)));
            for (Scalar a : {Scalar(0), Scalar(1), Scalar(random_weight())}) {
                CAPTURE(name);
                CAPTURE(to_string(a));
                CHECK(morse_novikov(f, Weight(a)).degree_dims() == morse_novikov(g, Weight(a)).degree_dims());
                CHECK(table(dolbeault(f, Weight(a)), 2) == table(dolbeault(g, Weight(a)), 2));
                CHECK(bc_table(f, Weight(a)) == bc_table(g, Weight(a)));
            }
        }
    }
}

TEST_CASE("models without a complex structure keep the real operators") {
    Model m = builtin("torus2");
    m.structure = {{0, 2, 0, Rational(1)}};
    m = canonical(m);
    TwistedFamily f(m);
    CHECK_FALSE(f.has_complex());
    CHECK_THROWS_AS(f.basis(), ModelError);
    CHECK(morse_novikov(f, W(0)).degree_dims() == oracle_mn_dims(m, Scalar(0)));
    CHECK_THROWS_AS(dolbeault(f, W(0)), ModelError);
}

TEST_CASE("reports are deterministic") {
    TwistedFamily f(builtin("inoue_sm"));
    CohomologyReport a = dolbeault(f, W(1, 2)), b = dolbeault(f, W(1, 2));
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i].representatives == b.entries[i].representatives);
}

TEST_CASE("inoue family: the fundamental class survives for every rotation") {
    for (const Rational& c : {Rational(0), Rational(1, 3), Rational(2), Rational(-5, 7)}) {
        Model m = inoue_sm_model(c);
        CHECK(validate(m).all_passed());
        MnClass k = mn_class(m, W(1), 2, form_vector(omega_form(m), 4, 2));
        CHECK(k.closed);
        CHECK_FALSE(k.exact);
        CHECK(morse_novikov(m, W(1)).degree_dims() == Dims{0, 0, 1, 1, 0});
    }
}
