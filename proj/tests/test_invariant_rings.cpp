#include <doctest.h>

#include "cohomolab/invariant_rings.hpp"

using namespace coho;

TEST_SUITE("invariant_rings") {

TEST_CASE("graded algebra basics")
{
    GradedAlgebra a(5, {2, 2}, {3});
    CHECK(a.basis(4).size() == 3);
    CHECK(a.basis(5).size() == 2);
    CHECK(a.basis(1).empty());
    auto w = a.ext_gen(0);
    CHECK(a.mul(w, w).empty());
    auto x = a.gen(0);
    CHECK(a.mul(x, w) == a.mul(w, x));
    CHECK_THROWS_AS(a.degree(a.add(x, w)), NonHomogeneous);
    auto c = a.coordinates(a.pow(x, 2), 4);
    CHECK(a.from_coordinates(4, c) == a.pow(x, 2));
}

TEST_CASE("exterior signs")
{
    GradedAlgebra a(7, {2}, {1, 1});
    auto u = a.ext_gen(0), v = a.ext_gen(1);
    CHECK(a.add(a.mul(u, v), a.mul(v, u)).empty());
}

TEST_CASE("matrix helpers and group orders")
{
    CHECK(MatrixAction(3, sl2_generators(3)).closure().size() == 24);
    CHECK(MatrixAction(3, gl2_generators(3)).closure().size() == 48);
    CHECK(MatrixAction(5, sl2_generators(5)).closure().size() == 120);
    CHECK(MatrixAction(5, held_5_matrices()).closure().size() == 48);
    MatFp m{{1, 2}, {3, 4}};
    auto inv = mat_inverse(m, 5);
    REQUIRE(inv);
    CHECK(mat_mul(m, *inv, 5) == mat_identity(2));
    CHECK(mat_det(m, 5) == 3);
    CHECK(primitive_root(7) == 3);
}

TEST_CASE("SL2(3) invariants in low degree")
{
    GradedAlgebra a(3, {1, 1});
    MatrixAction act(3, sl2_generators(3));
    auto d = fixed_dims(a, act, 6);
    CHECK(d[1] == 0);
    CHECK(d[4] == 1);
    auto [da, db] = dickson_pair(a);
    CHECK(span_contains(a, 4, fixed_subspace(a, act, 4), {da}));
}

TEST_CASE("Dickson algebras")
{
    CHECK(dickson_check(3, 24).pass());
    CHECK(dickson_check(5, 30).pass());
    auto bad = dickson_check(3, 24, DicksonVariant::perturbed);
    CHECK_FALSE(bad.pass());
    CHECK_FALSE(bad.sl.generators_invariant);
    CHECK(twisted_dickson_check(3, 24).pass());
}

TEST_CASE("fixed dimensions are conjugation invariant")
{
    GradedAlgebra a(5, {1, 1});
    MatrixAction act(5, held_5_matrices());
    auto c = MatFp{{1, 2}, {0, 1}};
    CHECK(fixed_dims(a, act, 16) == fixed_dims(a, act.conjugated(c), 16));
    CHECK(fixed_dims(a, act, 16) == fixed_dims(a, act.transposed(), 16));
}

TEST_CASE("averaging spans the invariants for a p'-group")
{
    // diag(2,3) and the swap generate a group of order 8 in GL_2(5)
    GradedAlgebra a(5, {1, 1});
    MatrixAction act(5, {{{2, 0}, {0, 3}}, {{0, 1}, {1, 0}}});
    auto group = act.closure();
    REQUIRE(group.size() % 5 != 0);
    for (std::uint32_t d = 0; d <= 12; ++d) {
        std::vector<Element> averages;
        for (const auto& m : a.basis(d)) {
            Element s;
            for (const auto& g : group) s = a.add(s, act.apply(a, g, a.monomial(m)));
            averages.push_back(s);
        }
        auto fixed = fixed_subspace(a, act, d);
        CHECK(span_contains(a, d, fixed, averages));
        CHECK(span_contains(a, d, averages, fixed));
    }
}

TEST_CASE("order-48 group at p = 5")
{
    auto r = held_5_part_check(120);
    CHECK(r.group_order == 48);
    CHECK(r.pass());
    CHECK(r.fixed[15] == 1);
    CHECK(r.fixed[16] == 1);
    CHECK(held_5_part_check(60, true).pass());
}

}
