#pragma once

#include <cstdint>
#include <string>

#include "cohomolab/bar.hpp"

namespace coho::checks {

struct IdentityTally {
    std::size_t trials = 0;
    std::size_t leibniz = 0;       // δ(uv) = (δu)v + (-1)^u u(δv)
    std::size_t cup1_formula = 0;  // δ(a∪1b) = -δa∪1b - (-1)^a a∪1δb + ab - (-1)^{ab} ba
    std::size_t cup1_literal = 0;  // same with + (-1)^{ab} ba
    std::size_t hirsch = 0;        // (ab)∪1c = (-1)^a a(b∪1c) + (-1)^{bc} (a∪1c)b
    bool all_hold() const { return leibniz == trials && cup1_formula == trials && hirsch == trials; }
};

// Random integral cochain triples with degrees 1..3 and a+b+c <= 6.
IdentityTally cochain_identities(const GroupPtr& g, std::size_t trials, std::uint64_t seed);

// ab - ba is not a coboundary for the two degree-1 classes of C3 x C3 mod 3,
// so no cup-1 can satisfy the + form.
bool literal_cup1_obstructed();

// Cor from a C_p factor to C_p x C_p kills H^i(-;F_p), 1 <= i <= max_degree.
bool corestriction_vanishes(std::uint32_t p, unsigned max_degree);

// Cor∘Res = [G:H] on random classes of H^n(G;F_p), 1 <= n <= max_degree.
bool cor_res_is_index(const GroupPtr& g, const std::vector<Elem>& subgroup_gens, std::uint32_t p, unsigned max_degree,
                      std::size_t samples, std::uint64_t seed);

} // namespace coho::checks
