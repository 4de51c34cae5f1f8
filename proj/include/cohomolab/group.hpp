#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coho {

using Elem = std::uint32_t;

// Polycyclic presentation: generators g_0..g_{k-1} with relative orders r_i,
// power relations g_i^{r_i} = w_i and conjugates g_j^{g_i} = g_i^{-1} g_j g_i = c_ij (i < j),
// all words given as exponent vectors supported on generators > i.
struct PcPresentation {
    std::vector<std::uint32_t> rel;
    std::vector<std::vector<std::uint32_t>> power;
    std::vector<std::vector<std::vector<std::uint32_t>>> conj; // conj[i][j]
    std::vector<std::string> names;

    explicit PcPresentation(std::vector<std::uint32_t> relative_orders, std::vector<std::string> gen_names = {});
    std::size_t size() const { return rel.size(); }
    void set_power(std::size_t i, std::vector<std::uint32_t> w) { power.at(i) = std::move(w); }
    void set_conj(std::size_t i, std::size_t j, std::vector<std::uint32_t> w) { conj.at(i).at(j) = std::move(w); }
};

class FiniteGroup {
public:
    static constexpr std::size_t max_order = 4096;

    // Tabulates a pc presentation; throws if the presentation is inconsistent.
    static std::shared_ptr<const FiniteGroup> from_pc(const PcPresentation& pc, std::string name);
    // Tabulates from an explicit multiplication table (element 0 must be the identity).
    static std::shared_ptr<const FiniteGroup> from_table(std::vector<Elem> table, std::size_t order,
                                                         std::vector<Elem> generators, std::string name);

    std::size_t order() const { return n_; }
    Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem h, Elem g) const { return mul(inv(g), mul(h, g)); } // h^g
    Elem power(Elem a, std::uint64_t e) const;
    std::uint32_t element_order(Elem a) const;
    std::uint32_t exponent() const;
    const std::vector<Elem>& generators() const { return gens_; }
    const std::string& name() const { return name_; }

    bool has_pc() const { return pc_.has_value(); }
    const PcPresentation& pc() const { return *pc_; }
    // exponent vector of an element (pc groups only)
    const std::vector<std::uint32_t>& exponents(Elem a) const { return exps_.at(a); }
    Elem from_exponents(const std::vector<std::uint32_t>& e) const;
    // element of the i-th pc generator
    Elem pc_generator(std::size_t i) const { return pc_gens_.at(i); }

    std::uint64_t hash() const; // stable content hash
    std::string describe(Elem a) const;

private:
    FiniteGroup() = default;
    void finish(std::uint64_t spot_seed);

    std::size_t n_ = 0;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
    std::vector<Elem> gens_;
    std::string name_;
    std::optional<PcPresentation> pc_;
    std::vector<std::vector<std::uint32_t>> exps_;
    std::vector<Elem> pc_gens_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
    GroupPtr parent;
    std::vector<Elem> members;       // sorted
    std::vector<Elem> transversal;   // least-index representative of each left coset gH
    std::vector<Elem> generators;

    std::size_t order() const { return members.size(); }
    std::size_t index() const { return transversal.size(); }
    bool contains(Elem g) const;
    // left coset representative of g
    Elem coset_rep(Elem g) const;
    // position of g in members
    std::size_t position(Elem g) const;

private:
    friend Subgroup subgroup_closure(const GroupPtr&, const std::vector<Elem>&);
    std::vector<std::int32_t> pos_;
    std::vector<Elem> rep_of_;
};

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Elem>& gens);
// The subgroup as a group in its own right (elements renumbered in member order).
GroupPtr subgroup_as_group(const Subgroup& h, std::string name);

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g);
std::pair<Subgroup, Subgroup> center_and_derived(const GroupPtr& g);
std::vector<Subgroup> order_p_subgroup_classes(const GroupPtr& g, std::uint32_t p);
// All subgroups (closure lattice); throws if |G| > 200.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

struct GroupSpec {
    std::string family; // cyclic, product, P, M, B, G_a1, semidirect, P2
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t a = 1;
    std::uint32_t m = 0;
    int epsilon = 1;
    std::vector<GroupSpec> factors;
    std::vector<std::vector<std::vector<std::uint32_t>>> matrices;
};

GroupPtr build_group(const GroupSpec& spec);

GroupPtr cyclic_group(std::uint32_t m);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
GroupPtr p_group_P(std::uint32_t n, std::uint32_t p);       // P(n)
GroupPtr p_group_M(std::uint32_t n, std::uint32_t p);       // M(n)
GroupPtr p_group_B(std::uint32_t n, int epsilon, std::uint32_t p);
GroupPtr p_group_G_a1(std::uint32_t a, std::uint32_t p);
// (C_p)^n semidirect the group generated by the given n x n matrices over F_p;
// with no matrices, a Singer cycle of order p^n - 1.
GroupPtr elementary_semidirect(std::uint32_t p, std::uint32_t n,
                               std::vector<std::vector<std::vector<std::uint32_t>>> matrices);

// Companion matrix of a primitive polynomial of degree n over F_p (brute-force search).
std::vector<std::vector<std::uint32_t>> singer_matrix(std::uint32_t p, std::uint32_t n);

struct InvalidGroupSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace coho
