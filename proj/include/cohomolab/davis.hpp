#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cohomolab/linalg.hpp"

namespace coho {

using Rational = mpq_class;
using Simplex = std::vector<std::uint32_t>; // sorted vertex list

struct DavisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Face closure of the given simplices; vertices not in any facet stay isolated only if listed.
    static SimplicialComplex from_facets(std::uint32_t vertices, const std::vector<Simplex>& facets);
    static SimplicialComplex simplex(std::uint32_t vertices);          // full simplex
    static SimplicialComplex boundary_of_simplex(std::uint32_t dim);   // ∂Δ^dim
    static SimplicialComplex discrete(std::uint32_t vertices);

    std::uint32_t vertex_count() const { return l_; }
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    // cells(d): sorted d-simplices
    const std::vector<Simplex>& cells(int d) const;
    std::vector<std::size_t> f_vector() const;
    std::size_t size() const;
    bool contains(const Simplex& s) const;
    std::size_t index(const Simplex& s) const; // throws if absent
    std::vector<Simplex> facets() const;
    bool adjacent(std::uint32_t a, std::uint32_t b) const;
    std::vector<std::vector<std::uint32_t>> neighbours() const;
    std::int64_t euler_characteristic() const;

    // First clique of the 1-skeleton that is not a simplex.
    std::optional<Simplex> fullness_witness() const;
    bool is_full() const { return !fullness_witness(); }

    // Set on barycentric subdivisions: dimension of the face each vertex stands for.
    const std::optional<std::vector<std::uint32_t>>& origin_dimension() const { return origin_dim_; }
    void set_origin_dimension(std::vector<std::uint32_t> d) { origin_dim_ = std::move(d); }

private:
    std::uint32_t l_ = 0;
    std::vector<std::vector<Simplex>> cells_;
    std::optional<std::vector<std::uint32_t>> origin_dim_;
};

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);
SimplicialComplex link(const SimplicialComplex& k, const Simplex& s);

// Disc with 3n boundary edges, boundary wrapped n times round a 3-cycle.
// Throws DavisError if the homology is not (Z, Z/n, 0).
SimplicialComplex moore_complex(std::uint32_t n);

struct HomologyGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion; // divisors > 1
    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const { return rank == o.rank && torsion == o.torsion; }
    Integer exponent() const; // lcm of torsion, 1 if none
    std::string str() const;
};

// H_0 .. H_dim with Z coefficients, lexicographic orientation.
std::vector<HomologyGroup> homology(const SimplicialComplex& k);
// H^n = free part of H_n plus torsion of H_{n-1}
HomologyGroup cohomology_degree(const SimplicialComplex& k, unsigned n);
HomologyGroup cohomology_degree(const std::vector<HomologyGroup>& h, unsigned n);

struct GraphProduct {
    std::vector<std::uint32_t> vertex_orders;
    SimplicialComplex nerve; // simplices = non-empty spherical subsets
};

GraphProduct racg_from_complex(const SimplicialComplex& k);

struct Coloring {
    std::vector<std::uint32_t> colour; // 0..k-1
    std::uint32_t k = 0;
    std::string method; // "dimension" or "greedy"
};

Coloring greedy_coloring(const SimplicialComplex& k);
Coloring torsion_free_coloring(const SimplicialComplex& k);

struct QuotientVertex {
    std::size_t simplex = 0; // 0 = empty set, else 1 + position among all simplices of the nerve
    std::uint32_t coset = 0; // canonical representative in (C_2)^k
};

struct DavisQuotient {
    GraphProduct source;
    Coloring coloring;
    SimplicialComplex complex;
    std::vector<QuotientVertex> labels;
    std::vector<std::size_t> type_counts; // per spherical subset, same order as labels' simplex
    std::int64_t euler = 0;
};

DavisQuotient davis_quotient(const GraphProduct& gp, const Coloring& c);

Rational chiswell_chi(const SimplicialComplex& k);
Rational chiswell_chi_printed(const SimplicialComplex& k); // 1 - 1/2 Σ n_i / 2^i
Rational orbifold_chi(const SimplicialComplex& k);

struct EulerReport {
    std::vector<std::size_t> n;
    Rational chi_chiswell, chi_printed, chi_orbifold, chi_quotient_over_index;
    std::uint32_t k = 0;
    std::int64_t quotient_euler = 0;
    bool pass() const { return chi_chiswell == chi_orbifold && chi_orbifold == chi_quotient_over_index; }
};

EulerReport euler_report(const SimplicialComplex& k);

struct BestvinaReport {
    std::uint32_t n = 0;
    std::vector<HomologyGroup> moore_homology;
    bool moore_certified = false;
    std::vector<std::size_t> nerve_f_vector, quotient_f_vector;
    std::uint32_t k = 0;
    std::vector<HomologyGroup> quotient_homology;
    HomologyGroup h3;
    bool h0_is_z = false;
    bool high_vanish = false;     // H_i = 0 for i >= 4
    bool exponent_divides = false; // exponent of torsion of H^3 divides n
    bool rank_h3_zero = false;     // tracked expectation, not part of pass()
    EulerReport euler;
    bool pass() const { return moore_certified && h0_is_z && high_vanish && exponent_divides && euler.pass(); }
};

BestvinaReport bestvina(std::uint32_t n);

} // namespace coho
