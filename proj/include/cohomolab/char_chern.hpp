#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cohomolab/group.hpp"

namespace coho {

using Rational = mpq_class;

// Element of Q(ζ_N), stored reduced modulo the cyclotomic polynomial Φ_N.
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(std::uint32_t conductor);
    Cyclotomic(std::uint32_t conductor, const Rational& r);
    static Cyclotomic root(std::uint32_t conductor, std::int64_t k); // ζ_N^k

    std::uint32_t conductor() const { return n_; }
    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational() const; // throws unless is_rational()
    // Galois action ζ -> ζ^k (k coprime to N); k = -1 is complex conjugation.
    Cyclotomic galois(std::int64_t k) const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    bool operator==(const Cyclotomic& o) const;
    std::string str() const;

private:
    void check(const Cyclotomic& o) const;
    std::uint32_t n_ = 1;
    std::vector<Rational> c_;
};

// Integer coefficients of Φ_n, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t n);

struct ClassFunction {
    GroupPtr group;
    std::vector<std::vector<Elem>> classes;
    std::vector<std::size_t> class_of; // per element
    std::vector<Cyclotomic> values;    // per class

    const Cyclotomic& operator()(Elem g) const { return values[class_of[g]]; }
    Rational degree() const { return values[class_of[0]].rational(); }
};

// ⟨χ,ψ⟩ = (1/|G|) Σ χ(g) ψ(g^{-1})
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);

struct CharacterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complete list of irreducible characters, found by inducing linear characters
// of every subgroup (|G| <= 200), or of the supplied subgroups.
std::vector<ClassFunction> irreducible_characters(const GroupPtr& g, const std::vector<Subgroup>& sources = {});

struct ChernReport {
    Subgroup subgroup;
    std::set<std::uint32_t> exponent_set; // degrees in u, u of degree 2
    std::optional<std::uint32_t> m;       // empty: no exponents (m = infinity)
};

// Multiplicities a_j of ζ_p^j on the subgroup C = <c> of order p.
std::vector<std::uint32_t> eigenvalue_multiplicities(const ClassFunction& chi, Elem c, std::uint32_t p);

ChernReport chern_exponents_at(const GroupPtr& g, const Subgroup& c, std::uint32_t p,
                               const std::vector<ClassFunction>& irreducibles);

struct PcReport {
    std::uint32_t pc = 0;                 // 2 lcm{m(i)}
    std::uint32_t lcm_of_2m = 0;          // lcm{2 m(i)}, the published variant
    std::vector<ChernReport> per_class;
};

PcReport pc_invariant(const GroupPtr& g, std::uint32_t p);

} // namespace coho
