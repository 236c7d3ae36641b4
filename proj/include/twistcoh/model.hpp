#pragma once

#include "twistcoh/exterior.hpp"
#include "twistcoh/matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace twistcoh {

/// de_k contains coeff * e_i ^ e_j (0-based, i < j).
struct StructureTerm {
    int i = 0;
    int j = 0;
    int k = 0;
    Rational coeff;
    friend bool operator==(const StructureTerm&, const StructureTerm&) = default;
};

/// omega contains coeff * e_i ^ e_j (0-based, i < j).
struct OmegaTerm {
    int i = 0;
    int j = 0;
    Rational coeff;
    friend bool operator==(const OmegaTerm&, const OmegaTerm&) = default;
};

/// Finite-dimensional invariant-form model of a manifold: a real coframe
/// e_1..e_n with constant structure constants, an almost-complex structure
/// acting on 1-forms, a Lee form and a Hermitian 2-form. Treated as immutable
/// once built; the cohomology of the model is the cohomology of its cochain
/// algebra (no claim is made that it equals the manifold's).
struct Model {
    std::string name;
    int dim = 0;
    std::vector<StructureTerm> structure;  ///< sorted by (k, i, j), no zero or repeated entries
    Matrix j;                              ///< column c holds the coordinates of J(e_c)
    std::vector<Rational> theta;           ///< Lee form coefficients
    std::vector<OmegaTerm> omega;          ///< sorted by (i, j)
    bool lck = false;

    friend bool operator==(const Model&, const Model&) = default;
};

/// Sorts and merges structure/omega terms; drops zeros. Throws DimensionError
/// on out-of-range indices or inconsistent shapes.
Model canonical(Model m);

Form generator_differential(const Model& m, int k);
Form exterior_derivative(const Model& m, const Form& f);
Form theta_form(const Model& m);
Form omega_form(const Model& m);

/// Real exterior derivative Lambda^k -> Lambda^{k+1} in lexicographic bases.
Matrix differential_matrix(const Model& m, int k);
/// Left multiplication by a homogeneous form of degree `form_degree`, from
/// Lambda^k to Lambda^{k+form_degree}, in an n-dimensional exterior algebra.
Matrix left_wedge_matrix(const Form& f, int n, int k, int form_degree);

/// Complex 1-forms phi with J phi = -i phi, as columns over Q(i) (echelonized).
Matrix holomorphic_coframe(const Matrix& j);

struct ValidationCheck {
    std::string constraint;
    bool enforced = true;  ///< false for checks reported but not required (dω = θ∧ω without lck)
    bool passed = true;
    std::vector<std::string> witnesses;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    const ValidationCheck& check(std::string_view constraint) const;
};

inline constexpr std::string_view kCheckJSquared = "J^2=-1";
inline constexpr std::string_view kCheckDSquared = "d^2=0";
inline constexpr std::string_view kCheckThetaClosed = "d(theta)=0";
inline constexpr std::string_view kCheckLck = "d(omega)=theta^omega";
inline constexpr std::string_view kCheckIntegrable = "integrability";

ValidationReport validate(const Model& m);

std::vector<std::string> builtin_names();
/// torus2, hopf_surface, kodaira_thurston, inoue_sm. Throws ModelError otherwise.
Model builtin(std::string_view name);
/// The inoue_sm family with a chosen rotation constant (the builtin uses 1).
Model inoue_sm_model(const Rational& rotation);

std::string serialize(const Model& m);
Model parse_model(std::string_view text);

Model with_theta(Model m, std::vector<Rational> theta);

/// Re-expresses the model in the coframe f_a = sum_i g(i, a) e_i.
Model change_coframe(const Model& m, const Matrix& g);

/// FNV-1a 64 of the canonical serialization.
std::uint64_t digest(const Model& m);

}  // namespace twistcoh
