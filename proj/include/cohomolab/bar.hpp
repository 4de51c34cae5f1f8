#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohomolab/group.hpp"
#include "cohomolab/linalg.hpp"

namespace coho {

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Limits {
    std::size_t max_cells = 1'000'000;
    std::string cache_dir; // empty: no disk cache
    static Limits from_env();
};

// Normalized bar cochain with trivial coefficients in Z (modulus 0) or F_p.
// Values are dense over tuples of non-identity elements in mixed radix
// (first entry most significant).
class Cochain {
public:
    Cochain() = default;
    Cochain(GroupPtr g, unsigned degree, std::uint32_t modulus);

    const GroupPtr& group() const { return g_; }
    unsigned degree() const { return deg_; }
    std::uint32_t modulus() const { return mod_; }
    std::size_t size() const { return v_.size(); }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    std::int64_t& operator[](std::size_t i) { return v_[i]; }
    const std::vector<std::int64_t>& values() const { return v_; }

    std::int64_t at(const std::vector<Elem>& t) const; // 0 on tuples containing 1
    void set(const std::vector<Elem>& t, std::int64_t v);
    std::size_t index(const std::vector<Elem>& t) const;
    std::vector<Elem> tuple(std::size_t idx) const;

    bool is_zero() const;
    void normalize(); // reduce mod p
    Cochain reduced(std::uint32_t p) const;

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(std::int64_t s);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(std::int64_t s, Cochain a) { return a *= s; }
    bool operator==(const Cochain& o) const;

    static Cochain random(GroupPtr g, unsigned degree, std::uint32_t modulus, std::mt19937_64& rng,
                          std::int64_t range = 0);
    // 1-cochain from a homomorphism value on each element
    static Cochain from_function(GroupPtr g, unsigned degree, std::uint32_t modulus,
                                 const std::function<std::int64_t(const std::vector<Elem>&)>& f);

private:
    void check_compatible(const Cochain& o) const;
    GroupPtr g_;
    unsigned deg_ = 0;
    std::uint32_t mod_ = 0;
    std::vector<std::int64_t> v_;
};

std::size_t cell_count(const FiniteGroup& g, unsigned n);

Cochain coboundary(const Cochain& c);
Cochain cup(const Cochain& u, const Cochain& v);
Cochain cup1(const Cochain& u, const Cochain& v);
bool is_cocycle(const Cochain& c);

// delta_p(u) = (1/p) delta(lift u), integral; throws if u is not a cocycle.
Cochain bockstein_integral(const Cochain& u);
// beta(u) = delta_p(u) mod p.
Cochain bockstein(const Cochain& u);

// Coboundary matrix C^n -> C^{n+1} (rows: (n+1)-cells, cols: n-cells).
MatrixFp coboundary_matrix_fp(const GroupPtr& g, unsigned n, std::uint32_t p);
MatrixZ coboundary_matrix_z(const GroupPtr& g, unsigned n);

// Solve delta x = c; returns x or nothing.
std::optional<Cochain> coboundary_preimage(const Cochain& c);
bool class_equal(const Cochain& u, const Cochain& v);
// u - v in span(extra) + B^n
bool class_equal_modulo(const Cochain& u, const Cochain& v, const std::vector<Cochain>& extra);

// Cocycle representatives of a basis of H^n(G;F_p).
std::vector<Cochain> cohomology_basis(const GroupPtr& g, unsigned n, std::uint32_t p);

struct MasseyResult {
    Cochain representative;
    std::vector<Cochain> indeterminacy; // spans uH + Hw modulo coboundaries (may be empty)
};

struct MasseyHypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// witness_seed != 0 perturbs the witnesses by random cocycles (independent recomputation).
MasseyResult massey(const Cochain& u, const Cochain& v, const Cochain& w, std::uint64_t witness_seed = 0);
MasseyResult matrix_massey(const std::vector<Cochain>& U, const std::vector<std::vector<Cochain>>& V,
                           const std::vector<Cochain>& W, std::uint64_t witness_seed = 0);

// Subgroup as a group in its own right, with the data needed for restriction and transfer.
struct SubgroupContext {
    Subgroup sub;
    GroupPtr group; // elements numbered by position in sub.members
    SubgroupContext(Subgroup s, std::string name);
    Elem to_parent(Elem h) const { return sub.members[h]; }
    Elem from_parent(Elem g) const { return static_cast<Elem>(sub.position(g)); }
};

Cochain restrict_to(const Cochain& c, const SubgroupContext& h);
Cochain transfer(const Cochain& c, const SubgroupContext& h);
// (c_g^* f)[h_1|...] = f[g^{-1}h_1g|...] for g normalizing H
Cochain conjugate(const Cochain& c, const SubgroupContext& h, Elem g);

// Homology of the normalized bar complex.
struct IntegralGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion;
    Integer order() const; // product of torsion (0 if rank > 0)
};

std::vector<std::size_t> cohomology_dims_mod_p(const GroupPtr& g, std::uint32_t p, unsigned max_degree,
                                               const Limits& lim = {});
IntegralGroup integral_cohomology(const GroupPtr& g, unsigned n, const Limits& lim = {});

// Direct (unreduced) normalized bar computations, for cross-validation.
std::vector<std::size_t> cohomology_dims_mod_p_direct(const GroupPtr& g, std::uint32_t p, unsigned max_degree,
                                                      const Limits& lim = {});
IntegralGroup integral_cohomology_direct(const GroupPtr& g, unsigned n, const Limits& lim = {});

// Algebraic Morse reduction of the normalized bar complex of a pc group.
class MorseBar {
public:
    MorseBar(GroupPtr g, Limits lim = {});
    const std::vector<std::vector<Elem>>& critical(unsigned n);
    // Boundary of the reduced complex in degree n (rows: critical (n-1)-cells).
    const MatrixZ& boundary(unsigned n);
    std::size_t explored() const { return explored_; }

private:
    enum class Kind { Critical, Redundant, Collapsible };
    struct Class {
        Kind kind;
        std::vector<Elem> partner;
    };
    Class classify(const std::vector<Elem>& cell) const;
    std::vector<std::pair<std::vector<Elem>, std::int64_t>> faces(const std::vector<Elem>& cell) const;
    std::uint64_t key(const std::vector<Elem>& cell) const;
    MatrixZ compute_boundary(unsigned n);

    GroupPtr g_;
    Limits lim_;
    std::vector<std::vector<std::vector<Elem>>> crit_;
    std::vector<std::optional<MatrixZ>> bd_;
    std::size_t explored_ = 0;
    std::vector<std::uint32_t> first_letter_, first_exp_, last_letter_, last_exp_, length_;
};

} // namespace coho
