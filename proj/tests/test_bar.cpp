#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "cohomolab/bar.hpp"

using namespace coho;

namespace {
GroupPtr s3() { return elementary_semidirect(3, 1, {{{2}}}); }
GroupPtr c3c3() { return direct_product(cyclic_group(3), cyclic_group(3)); }
Elem involution(const GroupPtr& g)
{
    for (Elem e = 1; e < g->order(); ++e)
        if (g->element_order(e) == 2) return e;
    return 0;
}
}

TEST_SUITE("bar_cohomology") {

TEST_CASE("coboundary squares to zero")
{
    std::mt19937_64 rng(3);
    for (const auto& g : {cyclic_group(3), s3(), c3c3()})
        for (unsigned n = 0; n <= 3; ++n) {
            CHECK(coboundary(coboundary(Cochain::random(g, n, 0, rng))).is_zero());
            CHECK(coboundary(coboundary(Cochain::random(g, n, 3, rng))).is_zero());
        }
}

TEST_CASE("the integral Bockstein of the C3 coordinate")
{
    auto g = cyclic_group(3);
    // ȳ(A^r) = r, b([A^r|A^s]) = 0 if r + s <= 2 else 1
    auto y = Cochain::from_function(g, 1, 3, [&](const std::vector<Elem>& t) { return static_cast<std::int64_t>(t[0]); });
    REQUIRE(is_cocycle(y));
    auto b = bockstein_integral(y);
    for (Elem r = 1; r < 3; ++r)
        for (Elem s = 1; s < 3; ++s) CHECK(b.at({r, s}) == (r + s <= 2 ? 0 : 1));
    CHECK(coboundary_preimage(bockstein(bockstein(y))).has_value());
}

TEST_CASE("mod-p dimensions")
{
    CHECK(cohomology_dims_mod_p(cyclic_group(3), 3, 4) == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(cohomology_dims_mod_p(c3c3(), 3, 4) == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(cohomology_dims_mod_p(p_group_P(3, 3), 3, 4) == std::vector<std::size_t>{1, 2, 4, 6, 7});
    CHECK(cohomology_dims_mod_p_direct(s3(), 3, 4) == cohomology_dims_mod_p(s3(), 3, 4));
}

TEST_CASE("integral cohomology")
{
    auto c2 = integral_cohomology(cyclic_group(2), 2);
    CHECK(c2.rank == 0);
    CHECK(c2.order() == 2);
    auto g = p_group_G_a1(2, 3);
    CHECK(integral_cohomology(g, 1).order() == 1);
    CHECK(integral_cohomology(g, 2).order() == 27);
    CHECK(integral_cohomology(g, 3).order() == 9);
    auto h2 = integral_cohomology(p_group_P(3, 3), 2);
    CHECK(h2.torsion == std::vector<Integer>{3, 3});
}

TEST_CASE("Leibniz, cup-1 coboundary and Hirsch identities")
{
    for (const auto& g : {cyclic_group(2), cyclic_group(3), s3()}) {
        auto t = checks::cochain_identities(g, 100, 17);
        CHECK(t.leibniz == 100);
        CHECK(t.cup1_formula == 100);
        CHECK(t.hirsch == 100);
        CHECK(t.cup1_literal < 100);
    }
}

TEST_CASE("the + form of the cup-1 coboundary formula is obstructed")
{
    CHECK(checks::literal_cup1_obstructed());
}

TEST_CASE("cup with the unit and cup-1 with a 0-cochain")
{
    std::mt19937_64 rng(5);
    auto g = s3();
    auto u = Cochain::random(g, 2, 0, rng);
    Cochain one(g, 0, 0);
    one[0] = 1;
    CHECK(cup(one, u) == u);
    CHECK(cup(u, one) == u);
    CHECK(cup1(u, one).is_zero());
}

TEST_CASE("Massey triple products on cyclic groups")
{
    auto y3 = cohomology_basis(cyclic_group(3), 1, 3).at(0);
    auto m3 = massey(y3, y3, y3);
    CHECK(m3.indeterminacy.empty());
    CHECK(class_equal(m3.representative, bockstein(y3)));
    CHECK_FALSE(coboundary_preimage(bockstein(y3)).has_value());
    CHECK(class_equal(massey(y3, y3, y3, 99).representative, m3.representative));

    for (std::uint32_t p : {5u, 7u}) {
        auto y = cohomology_basis(cyclic_group(p), 1, p).at(0);
        auto m = massey(y, y, y);
        CHECK(coboundary_preimage(m.representative).has_value());
        for (const auto& c : m.indeterminacy) CHECK(coboundary_preimage(c).has_value());
    }
}

TEST_CASE("Massey product hypotheses")
{
    auto h1 = cohomology_basis(c3c3(), 1, 3);
    // y y' is not a coboundary
    CHECK_THROWS_AS(massey(h1[0], h1[1], h1[0]), MasseyHypothesisError);
    Cochain zero(c3c3(), 1, 3);
    auto m = massey(zero, h1[0], h1[0]);
    CHECK(class_equal_modulo(m.representative, Cochain(c3c3(), 2, 3), m.indeterminacy));
}

TEST_CASE("class equality")
{
    std::mt19937_64 rng(9);
    auto h1 = cohomology_basis(c3c3(), 1, 3);
    CHECK(class_equal(h1[0], h1[0] + coboundary(Cochain::random(c3c3(), 0, 3, rng))));
    CHECK_FALSE(class_equal(h1[0], h1[1]));
}

TEST_CASE("transfer")
{
    CHECK(checks::corestriction_vanishes(3, 4));
    CHECK(checks::corestriction_vanishes(5, 2));
    auto g = s3();
    CHECK(checks::cor_res_is_index(g, {involution(g)}, 2, 4, 4, 1));
    auto c = c3c3();
    CHECK(checks::cor_res_is_index(c, {c->generators()[0]}, 3, 3, 3, 2));
}

TEST_CASE("feasibility limit is explicit")
{
    Limits lim;
    lim.max_cells = 1000;
    CHECK_THROWS_AS(cohomology_dims_mod_p_direct(p_group_P(3, 3), 3, 4, lim), ResourceLimit);
}

}
