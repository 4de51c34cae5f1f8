#include "checks.hpp"

#include <random>

namespace coho::checks {

namespace {

std::int64_t sgn(unsigned k) { return k % 2 ? -1 : 1; }

} // namespace

IdentityTally cochain_identities(const GroupPtr& g, std::size_t trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(1, 3);
    IdentityTally t;
    while (t.trials < trials) {
        unsigned a = deg(rng), b = deg(rng), c = deg(rng);
        if (a + b + c > 6) continue;
        auto A = Cochain::random(g, a, 0, rng), B = Cochain::random(g, b, 0, rng), C = Cochain::random(g, c, 0, rng);
        ++t.trials;
        if (coboundary(cup(A, B)) == cup(coboundary(A), B) + sgn(a) * cup(A, coboundary(B))) ++t.leibniz;

        auto lhs = coboundary(cup1(A, B));
        auto common = cup(A, B) - cup1(coboundary(A), B) - sgn(a) * cup1(A, coboundary(B));
        auto ba = cup(B, A);
        if (lhs == common - sgn(a * b) * ba) ++t.cup1_formula;
        if (lhs == common + sgn(a * b) * ba) ++t.cup1_literal;

        if (cup1(cup(A, B), C) == sgn(a) * cup(A, cup1(B, C)) + sgn(b * c) * cup(cup1(A, C), B)) ++t.hirsch;
    }
    return t;
}

bool literal_cup1_obstructed()
{
    auto g = direct_product(cyclic_group(3), cyclic_group(3));
    auto h1 = cohomology_basis(g, 1, 3);
    if (h1.size() != 2) return false;
    // With δa = δb = 0 the + form reads δ(a∪1b) = ab - ba.
    return !coboundary_preimage(cup(h1[0], h1[1]) - cup(h1[1], h1[0])).has_value();
}

bool corestriction_vanishes(std::uint32_t p, unsigned max_degree)
{
    auto g = direct_product(cyclic_group(p), cyclic_group(p));
    SubgroupContext h(subgroup_closure(g, {g->generators()[0]}), "Cp");
    for (unsigned n = 1; n <= max_degree; ++n)
        for (const auto& c : cohomology_basis(h.group, n, p))
            if (!coboundary_preimage(transfer(c, h)).has_value()) return false;
    return true;
}

bool cor_res_is_index(const GroupPtr& g, const std::vector<Elem>& gens, std::uint32_t p, unsigned max_degree,
                      std::size_t samples, std::uint64_t seed)
{
    SubgroupContext h(subgroup_closure(g, gens), "H");
    const auto index = static_cast<std::int64_t>(h.sub.index());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    for (unsigned n = 1; n <= max_degree; ++n) {
        auto basis = cohomology_basis(g, n, p);
        for (std::size_t s = 0; s < samples; ++s) {
            Cochain u(g, n, p);
            for (const auto& b : basis) u += static_cast<std::int64_t>(coef(rng)) * b;
            u += coboundary(Cochain::random(g, n - 1, p, rng));
            if (!class_equal(transfer(restrict_to(u, h), h), index * u)) return false;
        }
    }
    return true;
}

} // namespace coho::checks
