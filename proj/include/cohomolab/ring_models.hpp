#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cohomolab/invariant_rings.hpp"

namespace coho {

// ζ^z α^a β^b μ^mu ν^nu χ_chi (chi = 0: no χ factor).
struct RMono {
    std::uint32_t z = 0, a = 0, b = 0;
    std::uint8_t mu = 0, nu = 0;
    std::uint32_t chi = 0;
    auto operator<=>(const RMono&) const = default;
};

using RElem = std::map<RMono, std::uint32_t>;

// H^*(BP_2; Z) ⊗ F_p for odd p, presented by generators α, β (2), μ, ν (3),
// χ_i (2i, 2 <= i <= p-1) and ζ (2p). Products are reduced to the basis
//   ζ^i, ζ^i χ_j, ζ^i α^j ν, ζ^i α^j β^k μ^e  (j = 0 or k + e <= p-1).
class RingModel {
public:
    explicit RingModel(std::uint32_t p, std::uint32_t lambda = 1);

    std::uint32_t p() const { return p_; }
    std::uint32_t lambda() const { return lambda_; }

    std::uint32_t degree(const RMono& m) const;
    std::optional<std::uint32_t> degree(const RElem& x) const;
    bool is_basis(const RMono& m) const;
    const std::vector<RMono>& basis(std::uint32_t d) const;
    std::size_t index(const RMono& m) const;

    RElem one() const;
    RElem alpha() const;
    RElem beta() const;
    RElem mu() const;
    RElem nu() const;
    RElem chi(std::uint32_t i) const;
    RElem zeta() const;
    RElem monomial(const RMono& m, std::int64_t c = 1) const; // m must be a basis monomial

    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem scale(const RElem& a, std::int64_t c) const;
    RElem mul(const RElem& a, const RElem& b) const;
    RElem mul(const RMono& a, const RMono& b) const;
    RElem pow(const RElem& a, std::uint32_t e) const;

    std::vector<std::uint32_t> coordinates(const RElem& x, std::uint32_t d) const;
    RElem from_coordinates(std::uint32_t d, const std::vector<std::uint32_t>& v) const;
    std::string str(const RElem& x) const;

private:
    struct Raw {
        std::uint32_t z = 0, a = 0, b = 0;
        std::uint8_t mu = 0, nu = 0;
        std::vector<std::uint32_t> chis;
    };
    void reduce(Raw r, std::uint32_t c, RElem& out) const;

    std::uint32_t p_, lambda_;
    mutable std::mutex mu_;
    mutable std::map<std::uint32_t, std::vector<RMono>> basis_;
    mutable std::map<std::uint32_t, std::map<RMono, std::size_t>> index_;
};

struct ModelCheck {
    bool ok = true;
    std::size_t checked = 0;
    std::string failure;
};

// Random basis-monomial triples / pairs with total degree <= max_degree.
ModelCheck check_associativity(const RingModel& r, std::uint32_t max_degree, std::size_t samples, std::uint64_t seed);
ModelCheck check_commutativity(const RingModel& r, std::uint32_t max_degree, std::size_t samples, std::uint64_t seed);
// Every defining relation, evaluated in the model; returns the ones that do not vanish.
std::vector<std::string> failing_relations(const RingModel& r);

struct GeneratorImages {
    RElem alpha, beta, mu, nu, zeta;
    std::vector<RElem> chi; // indexed by i, entries below 2 unused
};

class RingAutomorphism {
public:
    RingAutomorphism(const RingModel& r, GeneratorImages images, std::string name = {});
    // α ↦ n1α+n2β, β ↦ n3α+n4β, μ ↦ j(n4μ+n3ν), ν ↦ j(n2μ+n1ν), χ_i ↦ j^iχ_i, ζ ↦ j^pζ
    static RingAutomorphism from_matrix(const RingModel& r, const MatFp& n, std::int64_t j, std::string name = {});

    RElem apply(const RElem& x) const;
    RingAutomorphism compose(const RingAutomorphism& inner) const; // this ∘ inner
    const GeneratorImages& images() const { return img_; }
    const std::string& name() const { return name_; }
    const RingModel& model() const { return *r_; }
    ModelCheck check_multiplicative(std::uint32_t max_degree, std::size_t samples, std::uint64_t seed) const;

private:
    const RingModel* r_;
    GeneratorImages img_;
    std::string name_;
};

std::vector<RElem> fixed_subspace(const RingModel& r, const std::vector<RingAutomorphism>& gens, std::uint32_t d);
std::vector<std::vector<RElem>> fixed_subring(const RingModel& r, const std::vector<RingAutomorphism>& gens,
                                              std::uint32_t max_degree);

class ModelSubalgebra {
public:
    ModelSubalgebra(const RingModel& r, std::vector<RElem> gens, std::uint32_t max_degree);
    const std::vector<RElem>& basis(std::uint32_t d) const { return basis_.at(d); }
    std::vector<std::size_t> dims() const;
    bool contains(const RElem& x) const;

private:
    const RingModel* r_;
    std::uint32_t max_;
    std::vector<std::vector<RElem>> basis_;
    std::vector<EchelonBasisFp> ech_;
};

bool span_contains(const RingModel& r, std::uint32_t d, const std::vector<RElem>& ys, const std::vector<RElem>& xs);

// Ring map into a polynomial ⊗ exterior algebra, given on generators.
struct RestrictionMap {
    std::string target_name;
    const RingModel* source = nullptr;
    std::shared_ptr<const GradedAlgebra> target;
    Element alpha, beta, mu, nu, zeta;
    std::vector<Element> chi;

    Element apply(const RElem& x) const;
    ModelCheck check_multiplicative(std::uint32_t max_degree, std::size_t samples, std::uint64_t seed) const;
};

// ---------------------------------------------------------------- named configurations

// p = 3. With printed_images the third generator is α ↦ -β, β ↦ α, μ ↦ ν,
// ν ↦ -μ, ζ ↦ -ζ; otherwise ζ follows the determinant rule (ζ fixed).
std::vector<RingAutomorphism> d8_automorphisms(const RingModel& r, bool printed_images = true);
// p = 7: diag(λ, λ') with λ^3 = λ'^3 = 1, and the swap.
std::vector<RingAutomorphism> s3xc3_automorphisms(const RingModel& r);
// β ↦ β + α, μ ↦ μ + ν.
RingAutomorphism shear_automorphism(const RingModel& r);
// Names: "D8", "D8-det", "S3xC3", "C3-shear", "identity". A trailing "-<int>.<int>"
// suffix is ignored.
std::string canonical_action_name(const std::string& name);
std::vector<RingAutomorphism> named_action(const RingModel& r, const std::string& name);

// p = 3, onto H^*(<B,C>) = F_3[β',γ] ⊗ Λ[δ]
RestrictionMap restriction_to_BC(const RingModel& r);
// p = 7, onto the subring F_7[ζ',ε] ⊗ Λ[δ] of H^*(<AB^{-1},C>), deg ζ' = 14
RestrictionMap restriction_to_K(const RingModel& r);

struct NamedElement {
    std::string name;
    RElem value;
};

// With printed_images the printed lists; otherwise the lists that match the
// determinant-consistent action: ζ(αν+βμ) in place of ζ(αν-βμ), and the span
// gains ζ^{2i+1}α^{2j}βμ.
std::vector<NamedElement> d8_generators(const RingModel& r, bool printed_images = true);
std::vector<NamedElement> d8_span_list(const RingModel& r, std::uint32_t max_degree, bool printed_images = true);
std::vector<NamedElement> s3xc3_generators(const RingModel& r);  // fifteen elements
std::vector<NamedElement> held_7_generators(const RingModel& r); // twelve elements

struct DimComparison {
    std::vector<std::size_t> lhs, rhs;
    std::optional<std::uint32_t> first_mismatch;
    bool pass() const { return !first_mismatch; }
};

DimComparison compare_dims(std::vector<std::size_t> lhs, std::vector<std::size_t> rhs);

struct ShearReport {
    std::uint32_t p = 0, max_degree = 0;
    DimComparison even; // fixed even part vs closure of {α, χ_i, ζ, β^m(β^p - α^{p-1}β)}
    bool pass() const { return even.pass(); }
};

// `trivial_action` replaces the shear by the identity (negative control).
ShearReport check_shear_fixed_ring(std::uint32_t p, std::uint32_t max_degree, bool trivial_action = false);

struct D8Report {
    bool printed_images = true;
    std::uint32_t max_degree = 0;
    bool span_fixed = false;           // listed span elements are invariant
    DimComparison fixed_vs_span;       // fixed dims vs listed span dims
    DimComparison span_vs_generated;   // listed span vs subring of the five generators
    bool generators_fixed = false;
    bool stable_under_normaliser = false; // restricted generators fixed by N(<B,C>)
    std::vector<std::string> unexplained;  // fixed elements outside the span, at the first mismatch
    bool pass() const
    {
        return span_fixed && fixed_vs_span.pass() && span_vs_generated.pass() && generators_fixed &&
               stable_under_normaliser;
    }
};

D8Report check_d8_fixed_ring(std::uint32_t max_degree = 24, bool printed_images = true);

struct S3C3Report {
    std::uint32_t max_degree = 0, lambda = 1;
    bool generators_fixed = false;
    DimComparison fixed_vs_generated;
    DimComparison fifteen_vs_twelve_plus_three;
    bool pass() const { return generators_fixed && fixed_vs_generated.pass() && fifteen_vs_twelve_plus_three.pass(); }
};

S3C3Report check_s3xc3_fixed_ring(std::uint32_t max_degree = 60, std::uint32_t lambda = 1);

struct MembershipLine {
    std::string name;
    std::string image;
    bool in_target = false;
};

struct RestrictionReport {
    std::vector<MembershipLine> lines;
    DimComparison image_vs_s_prime; // image subring vs <ζ'^6+ε^42, ζ'^2ε^2, ζ'^3ε^3, ζ'εδ, ζ'^2ε^2δ>
    bool pass() const;
};

RestrictionReport check_k_restriction(std::uint32_t max_target_degree = 100);

} // namespace coho
