#include <doctest.h>

#include <algorithm>

#include "cohomolab/char_chern.hpp"

using namespace coho;

namespace {

std::vector<std::string> degrees(const GroupPtr& g)
{
    std::vector<std::string> d;
    for (const auto& x : irreducible_characters(g)) d.push_back(x.degree().get_str());
    std::sort(d.begin(), d.end());
    return d;
}

std::uint64_t bound(const GroupPtr& g, std::uint32_t p)
{
    std::uint64_t pn = 1;
    for (auto o = g->order(); o % p == 0; o /= p) pn *= p;
    return 2 * (p - 1) * (pn / p);
}

GroupPtr c3c3() { return direct_product(cyclic_group(3), cyclic_group(3)); }

}

TEST_SUITE("char_chern") {

TEST_CASE("cyclotomic arithmetic")
{
    auto z = Cyclotomic::root(3, 1);
    auto s = Cyclotomic::root(3, 0) + z + Cyclotomic::root(3, 2);
    CHECK(s.is_zero());
    CHECK((z * z * z).rational() == 1);
    CHECK((z + z.galois(-1)).rational() == -1);
    CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
    CHECK(cyclotomic_polynomial(9) == std::vector<std::int64_t>{1, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("character tables")
{
    CHECK(irreducible_characters(cyclic_group(6)).size() == 6);
    CHECK(degrees(elementary_semidirect(3, 1, {{{2}}})) == std::vector<std::string>{"1", "1", "2"});
    auto p23 = degrees(p_group_P(3, 3));
    CHECK(std::count(p23.begin(), p23.end(), "1") == 9);
    CHECK(std::count(p23.begin(), p23.end(), "3") == 2);
    auto singer = degrees(elementary_semidirect(3, 2, {}));
    CHECK(std::count(singer.begin(), singer.end(), "1") == 8);
    CHECK(std::count(singer.begin(), singer.end(), "8") == 1);
}

TEST_CASE("orthogonality")
{
    auto irr = irreducible_characters(p_group_P(3, 3));
    for (std::size_t i = 0; i < irr.size(); ++i)
        for (std::size_t j = 0; j < irr.size(); ++j)
            CHECK(inner_product(irr[i], irr[j]).rational() == (i == j ? 1 : 0));
}

TEST_CASE("eigenvalue multiplicities of the regular character")
{
    auto g = cyclic_group(3);
    auto irr = irreducible_characters(g);
    for (const auto& x : irr) {
        auto a = eigenvalue_multiplicities(x, 1, 3);
        std::uint32_t total = 0;
        for (auto v : a) total += v;
        CHECK(total == 1);
    }
}

TEST_CASE("pc values")
{
    CHECK(pc_invariant(cyclic_group(6), 3).pc == 2);
    CHECK(pc_invariant(cyclic_group(9), 3).pc == 2);
    CHECK(pc_invariant(c3c3(), 3).pc == 2);
    CHECK(pc_invariant(p_group_P(3, 3), 3).pc == 6);
    CHECK(pc_invariant(p_group_P(3, 5), 5).pc == 10);
    CHECK(pc_invariant(elementary_semidirect(3, 2, {}), 3).pc == 12);
    CHECK(pc_invariant(elementary_semidirect(3, 1, {{{2}}}), 3).pc == 4);
    CHECK(pc_invariant(p_group_M(3, 3), 3).pc == 6);
}

TEST_CASE("pc ignores a p'-direct factor")
{
    auto a = pc_invariant(p_group_P(3, 3), 3);
    auto b = pc_invariant(direct_product(p_group_P(3, 3), cyclic_group(2)), 3);
    CHECK(a.pc == b.pc);
}

TEST_CASE("pc divides 2(p-1)p^(n-1)")
{
    std::vector<std::pair<GroupPtr, std::uint32_t>> cases{
        {cyclic_group(9), 3},       {c3c3(), 3},
        {p_group_P(3, 3), 3},       {p_group_P(3, 5), 5},
        {p_group_M(3, 3), 3},       {p_group_G_a1(2, 3), 3},
        {elementary_semidirect(3, 2, {}), 3}, {elementary_semidirect(3, 1, {{{2}}}), 3}};
    for (const auto& [g, p] : cases) {
        auto r = pc_invariant(g, p);
        CAPTURE(g->name());
        REQUIRE(r.pc > 0);
        CHECK(bound(g, p) % r.pc == 0);
        CHECK(r.lcm_of_2m == r.pc);
    }
}

}
