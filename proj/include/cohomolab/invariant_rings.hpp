#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomolab/linalg.hpp"

namespace coho {

// Polynomial exponents times a square-free exterior monomial (bit mask).
struct Monomial {
    std::vector<std::uint32_t> exps;
    std::uint32_t ext = 0;
    auto operator<=>(const Monomial&) const = default;
};

// Coefficients in F_p; zero coefficients are never stored.
using Element = std::map<Monomial, std::uint32_t>;

struct NonHomogeneous : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// F_p[x_1..x_n] ⊗ Λ[w_1..w_k] with arbitrary positive generator degrees.
class GradedAlgebra {
public:
    GradedAlgebra(std::uint32_t p, std::vector<std::uint32_t> poly_degrees,
                  std::vector<std::uint32_t> ext_degrees = {}, std::vector<std::string> names = {});

    std::uint32_t p() const { return p_; }
    std::size_t npoly() const { return pdeg_.size(); }
    std::size_t next() const { return edeg_.size(); }
    const std::vector<std::uint32_t>& poly_degrees() const { return pdeg_; }
    const std::vector<std::uint32_t>& ext_degrees() const { return edeg_; }

    std::uint32_t degree(const Monomial& m) const;
    // nullopt for zero; NonHomogeneous if terms have different degrees
    std::optional<std::uint32_t> degree(const Element& x) const;

    // sorted, deduplicated monomial basis of the degree-d component
    const std::vector<Monomial>& basis(std::uint32_t d) const;
    std::size_t index(const Monomial& m) const;

    Element one() const;
    Element gen(std::size_t i) const;     // polynomial generator
    Element ext_gen(std::size_t i) const; // exterior generator
    Element monomial(const Monomial& m, std::uint32_t c = 1) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element scale(const Element& a, std::int64_t c) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, std::uint32_t e) const;
    // product of monomials as a signed monomial; coefficient 0 if exterior parts overlap
    std::pair<std::uint32_t, Monomial> mul(const Monomial& a, const Monomial& b) const;

    std::vector<std::uint32_t> coordinates(const Element& x, std::uint32_t d) const;
    Element from_coordinates(std::uint32_t d, const std::vector<std::uint32_t>& v) const;
    std::string str(const Element& x) const;

private:
    std::uint32_t p_;
    std::vector<std::uint32_t> pdeg_, edeg_;
    std::vector<std::string> names_;
    mutable std::mutex mu_;
    mutable std::map<std::uint32_t, std::vector<Monomial>> basis_;
    mutable std::map<std::uint32_t, std::map<Monomial, std::size_t>> index_;
};

using MatFp = std::vector<std::vector<std::uint32_t>>;

MatFp mat_mul(const MatFp& a, const MatFp& b, std::uint32_t p);
std::uint32_t mat_det(const MatFp& a, std::uint32_t p);
std::optional<MatFp> mat_inverse(const MatFp& a, std::uint32_t p);
MatFp mat_transpose(const MatFp& a);
MatFp mat_identity(std::size_t n);

// Linear action on the polynomial generators, all of the same degree: g sends
// x_i to Σ_j g[j][i] x_j, so composition matches matrix multiplication. The
// exterior generator w_k goes to det(g)^{ext_det_power[k]} w_k.
struct MatrixAction {
    std::uint32_t p = 0;
    std::vector<MatFp> generators;
    std::vector<std::int32_t> ext_det_power;

    MatrixAction(std::uint32_t prime, std::vector<MatFp> gens, std::vector<std::int32_t> ext_powers = {});

    Element apply(const GradedAlgebra& a, const MatFp& g, const Element& x) const;
    // generated group, breadth first; throws past `cap` elements
    std::vector<MatFp> closure(std::size_t cap = 100000) const;
    MatrixAction transposed() const;
    MatrixAction conjugated(const MatFp& c) const; // c^{-1} g c
};

// Basis of the invariants in degree d (kernel of the stacked g - 1).
std::vector<Element> fixed_subspace(const GradedAlgebra& a, const MatrixAction& act, std::uint32_t d);
std::vector<std::size_t> fixed_dims(const GradedAlgebra& a, const MatrixAction& act, std::uint32_t max_degree);

// Degree-by-degree span of all products of the generators (including 1).
class Subalgebra {
public:
    Subalgebra(const GradedAlgebra& a, std::vector<Element> gens, std::uint32_t max_degree);
    const std::vector<Element>& basis(std::uint32_t d) const { return basis_.at(d); }
    std::vector<std::size_t> dims() const;
    bool contains(const Element& x) const;
    std::uint32_t max_degree() const { return max_; }

private:
    const GradedAlgebra* a_;
    std::uint32_t max_;
    std::vector<std::vector<Element>> basis_;
    std::vector<EchelonBasisFp> ech_;
};

std::vector<std::size_t> subalgebra_dims(const GradedAlgebra& a, const std::vector<Element>& gens, std::uint32_t max_degree);
// span(xs) ⊆ span(ys) inside one degree
bool span_contains(const GradedAlgebra& a, std::uint32_t d, const std::vector<Element>& ys, const std::vector<Element>& xs);

struct DicksonPair {
    Element a; // x^p x' - x'^p x
    Element b; // Σ_i x^{(p-1)(p-i)} x'^{(p-1)i}
};

// Generators of SL_2(p), and of GL_2(p) (adds diag(1, primitive root)).
std::vector<MatFp> sl2_generators(std::uint32_t p);
std::vector<MatFp> gl2_generators(std::uint32_t p);
std::uint32_t primitive_root(std::uint32_t p);

DicksonPair dickson_pair(const GradedAlgebra& poly2);

enum class DicksonVariant { standard, perturbed };

struct RingComparison {
    std::string label;
    std::vector<std::size_t> fixed;
    std::vector<std::size_t> generated;
    bool generators_invariant = true;
    std::optional<std::uint32_t> first_mismatch;
    bool pass() const { return generators_invariant && !first_mismatch; }
};

struct DicksonReport {
    std::uint32_t p = 0, max_degree = 0;
    DicksonVariant variant = DicksonVariant::standard;
    RingComparison sl, gl;
    bool pass() const { return sl.pass() && gl.pass(); }
};

// Polynomial degree (deg x = 1). The perturbed variant replaces b by the
// homogeneous non-invariant b + x^{p(p-1)}.
DicksonReport dickson_check(std::uint32_t p, std::uint32_t max_degree, DicksonVariant variant = DicksonVariant::standard);

// Z[x,x'] ⊗ Λ[w] mod p with deg x = 2, deg w = 3, w ↦ det·w:
// SL_2 fixes F_p[a,b] ⊗ Λ[w], GL_2 fixes F_p[a^{p-1},b] ⊗ Λ[a^{p-2}w].
DicksonReport twisted_dickson_check(std::uint32_t p, std::uint32_t max_degree);

struct HeldReport {
    std::size_t group_order = 0;
    bool transposed = false;
    std::uint32_t max_degree = 0;
    std::vector<std::size_t> fixed;
    std::vector<std::size_t> presented; // F_5[α,β,γ]/(γ²-3β²-3α³) ⊗ Λ[χ], degrees 16/24/24/15
    std::vector<std::size_t> generated; // closure of the fixed elements in degrees 16, 24, 15
    std::optional<std::uint32_t> first_mismatch;
    // the degree-48 relation among α³, β², βγ, γ² is equivalent to c² = 3(b² + a³)
    bool relation_normalizes = false;
    std::string relation;
    std::string headline_relation = "gamma^2 = 3(beta^2 + gamma^3)";
    std::string working_relation = "c^2 = 3(b^2 + a^3)";
    bool pass() const { return group_order == 48 && !first_mismatch && relation_normalizes; }
};

std::vector<MatFp> held_5_matrices();
HeldReport held_5_part_check(std::uint32_t max_degree, bool transposed = false);

} // namespace coho
