#pragma once

#include "twistcoh/matrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twistcoh {

/// Exterior monomial e_{i1} ^ ... ^ e_{ik} (i1 < ... < ik) encoded as a bit set.
using Mask = std::uint32_t;

int popcount(Mask m);

/// All k-subsets of {0..n-1} in lexicographic order of their sorted index tuples.
std::vector<Mask> subsets(int n, int k);

/// Sign of e_a ^ e_b relative to e_{a|b}; 0 when the monomials overlap.
int wedge_sign(Mask a, Mask b);

/// Sparse exterior form: monomial -> coefficient, zero coefficients never stored.
using Form = std::map<Mask, Scalar>;

void accumulate(Form& into, Mask m, const Scalar& c);
Form wedge(const Form& a, const Form& b);
Form scaled(const Form& f, const Scalar& s);
Form add(const Form& a, const Form& b);

/// Lexicographic basis of one degree with index lookup.
class DegreeBasis {
public:
    DegreeBasis(int n, int k);
    int degree() const { return k_; }
    std::size_t size() const { return masks_.size(); }
    const std::vector<Mask>& masks() const { return masks_; }
    std::size_t index(Mask m) const;

    Vector to_vector(const Form& f) const;
    Form to_form(const Vector& v) const;

private:
    int k_;
    std::vector<Mask> masks_;
    std::map<Mask, std::size_t> index_;
};

/// "e1^e3" style label with 1-based indices; "1" for the empty monomial.
std::string monomial_label(Mask m, const std::string& stem = "e");

/// Matrix of the linear map induced on k-forms by a map g of 1-forms:
/// column j of g is the image of e_j, and e_I maps to g(e_i1) ^ ... ^ g(e_ik).
Matrix exterior_power(const Matrix& g, int k);

}  // namespace twistcoh
