#include <doctest.h>

#include "cohomolab/group.hpp"

using namespace coho;

namespace {
GroupPtr s3() { return elementary_semidirect(3, 1, {{{2}}}); }
}

TEST_SUITE("groups") {

TEST_CASE("orders of the families")
{
    CHECK(cyclic_group(9)->order() == 9);
    CHECK(p_group_P(3, 3)->order() == 27);
    CHECK(p_group_P(3, 5)->order() == 125);
    CHECK(p_group_M(3, 3)->order() == 27);
    CHECK(p_group_G_a1(2, 3)->order() == 81);
    CHECK(s3()->order() == 6);
    CHECK(elementary_semidirect(3, 2, {})->order() == 72);
    CHECK(direct_product(cyclic_group(3), cyclic_group(3))->order() == 9);
}

TEST_CASE("group axioms on the table")
{
    for (const auto& g : {p_group_P(3, 3), s3(), p_group_G_a1(2, 3)}) {
        for (Elem a = 0; a < g->order(); ++a) {
            CHECK(g->mul(a, g->inv(a)) == 0);
            CHECK(g->mul(0, a) == a);
        }
        // associativity on a sample
        for (Elem a = 0; a < g->order(); a += 5)
            for (Elem b = 0; b < g->order(); b += 3)
                for (Elem c = 0; c < g->order(); c += 7)
                    CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
}

TEST_CASE("P2(p) is extraspecial of exponent p")
{
    auto g = p_group_P(3, 3);
    CHECK(g->exponent() == 3);
    auto [z, d] = center_and_derived(g);
    CHECK(z.order() == 3);
    CHECK(d.order() == 3);
    CHECK(conjugacy_classes(*g).size() == 11);
    CHECK(order_p_subgroup_classes(g, 3).size() == 5);
}

TEST_CASE("S3 structure")
{
    auto g = s3();
    CHECK(conjugacy_classes(*g).size() == 3);
    CHECK(all_subgroups(g).size() == 6);
    auto h = subgroup_closure(g, {g->generators()[0]});
    CHECK(h.order() * h.index() == 6);
}

TEST_CASE("specs and hashing")
{
    GroupSpec s;
    s.family = "P2";
    s.p = 3;
    CHECK(build_group(s)->hash() == p_group_P(3, 3)->hash());
    CHECK(build_group(s)->hash() != p_group_M(3, 3)->hash());
    GroupSpec bad;
    bad.family = "nonsense";
    CHECK_THROWS_AS(build_group(bad), InvalidGroupSpec);
    CHECK_THROWS_AS(p_group_P(3, 4), InvalidGroupSpec);
}

}
