#include <doctest.h>

#include "cohomolab/davis.hpp"

using namespace coho;

namespace {

SimplicialComplex s2prime() { return barycentric_subdivision(SimplicialComplex::boundary_of_simplex(3)); }

bool is_sphere2(const std::vector<HomologyGroup>& h)
{
    return h.size() == 3 && h[0] == HomologyGroup{1, {}} && h[1].is_zero() && h[2] == HomologyGroup{1, {}};
}

DavisQuotient quotient(const SimplicialComplex& k) { return davis_quotient(racg_from_complex(k), torsion_free_coloring(k)); }

}

TEST_SUITE("davis") {

TEST_CASE("face closure and f-vectors")
{
    auto k = SimplicialComplex::from_facets(4, {{0, 1, 2}, {2, 3}});
    CHECK(k.f_vector() == std::vector<std::size_t>{4, 4, 1});
    CHECK(k.contains({0, 2}));
    CHECK_FALSE(k.contains({1, 3}));
    CHECK(k.facets().size() == 2);
    CHECK_THROWS_AS(SimplicialComplex::from_facets(2, {{0, 5}}), DavisError);
}

TEST_CASE("barycentric subdivision of the 2-sphere")
{
    auto k = s2prime();
    CHECK(k.f_vector() == std::vector<std::size_t>{14, 36, 24});
    CHECK(k.is_full());
    CHECK_FALSE(SimplicialComplex::boundary_of_simplex(2).is_full());
    CHECK(is_sphere2(homology(k)));
}

TEST_CASE("homology and cohomology")
{
    CHECK(is_sphere2(homology(SimplicialComplex::boundary_of_simplex(3))));
    auto h = homology(moore_complex(4));
    CHECK(h[1].torsion == std::vector<Integer>{4});
    auto c2 = cohomology_degree(moore_complex(4), 2);
    CHECK(c2.rank == 0);
    CHECK(c2.torsion == std::vector<Integer>{4});
    CHECK(homology(SimplicialComplex::discrete(3))[0].rank == 3);
}

TEST_CASE("Moore complexes self-certify")
{
    for (std::uint32_t n : {2u, 3u, 4u, 5u}) {
        auto h = homology(moore_complex(n));
        CHECK(h[0] == HomologyGroup{1, {}});
        CHECK(h[1] == HomologyGroup{0, {Integer(n)}});
        CHECK(h[2].is_zero());
    }
    CHECK_THROWS_AS(moore_complex(1), DavisError);
    CHECK_FALSE(moore_complex(3).is_full());
    CHECK(barycentric_subdivision(moore_complex(3)).is_full());
}

TEST_CASE("links")
{
    auto s2 = SimplicialComplex::boundary_of_simplex(3);
    auto l = homology(link(s2, {0}));
    CHECK(l[0].rank == 1);
    CHECK(l[1].rank == 1);
    auto e = link(s2, {0, 1});
    CHECK(e.f_vector() == std::vector<std::size_t>{2});
    CHECK_THROWS_AS(link(SimplicialComplex::simplex(2), {0, 5}), DavisError);
}

TEST_CASE("right-angled Coxeter groups need full complexes")
{
    CHECK(racg_from_complex(SimplicialComplex::simplex(1)).vertex_orders.size() == 1);
    CHECK_THROWS_AS(racg_from_complex(SimplicialComplex::boundary_of_simplex(2)), DavisError);
    // six vertices, complete 1-skeleton, no triangles
    std::vector<Simplex> edges;
    for (std::uint32_t a = 0; a < 6; ++a)
        for (std::uint32_t b = a + 1; b < 6; ++b) edges.push_back({a, b});
    auto k6 = SimplicialComplex::from_facets(6, edges);
    CHECK_THROWS_AS(racg_from_complex(k6), DavisError);
    CHECK(greedy_coloring(k6).k == 6);
}

TEST_CASE("colourings")
{
    CHECK(torsion_free_coloring(SimplicialComplex::simplex(2)).k == 2);
    auto c = torsion_free_coloring(barycentric_subdivision(moore_complex(2)));
    CHECK(c.method == "dimension");
    CHECK(c.k == 3);
    GraphProduct bad{{2, 3}, SimplicialComplex::simplex(2)};
    CHECK_THROWS_AS(davis_quotient(bad, greedy_coloring(bad.nerve)), DavisError);
}

TEST_CASE("Euler characteristics")
{
    struct Case {
        SimplicialComplex k;
        Rational chi;
    };
    std::vector<Case> cases{{SimplicialComplex::simplex(1), Rational(1, 2)},
                            {SimplicialComplex::simplex(2), Rational(1, 4)},
                            {SimplicialComplex::discrete(2), Rational(0)},
                            {SimplicialComplex::simplex(3), Rational(1, 8)},
                            {s2prime(), Rational(0)}};
    for (const auto& c : cases) {
        auto e = euler_report(c.k);
        CHECK(e.pass());
        CHECK(e.chi_chiswell == c.chi);
    }
    CHECK(euler_report(SimplicialComplex::simplex(2)).chi_printed == Rational(-1, 4));
    CHECK(euler_report(barycentric_subdivision(moore_complex(2))).pass());
    CHECK(orbifold_chi(barycentric_subdivision(SimplicialComplex::boundary_of_simplex(4))) > 0);
}

TEST_CASE("small quotients")
{
    auto line = quotient(SimplicialComplex::discrete(2));
    auto h = homology(line.complex);
    CHECK(h[0] == HomologyGroup{1, {}});
    CHECK(h[1] == HomologyGroup{1, {}});

    auto cone = homology(quotient(SimplicialComplex::simplex(2)).complex);
    CHECK(cone[0] == HomologyGroup{1, {}});
    for (std::size_t i = 1; i < cone.size(); ++i) CHECK(cone[i].is_zero());
}

TEST_CASE("quotient over the subdivided 2-sphere is a closed 3-manifold")
{
    auto q = quotient(s2prime());
    CHECK(q.euler == 0);
    for (std::size_t i = 0; i < q.type_counts.size(); ++i) CHECK(q.type_counts[i] > 0);
    for (const auto& v : q.complex.cells(0)) CHECK(is_sphere2(homology(link(q.complex, v))));
    auto h = homology(q.complex);
    CHECK(h[3] == HomologyGroup{1, {}});
}

TEST_CASE("Bestvina quotients")
{
    for (std::uint32_t n : {2u, 3u}) {
        auto r = bestvina(n);
        CHECK(r.pass());
        CHECK(r.rank_h3_zero);
        CHECK(r.h3.exponent() == n);
    }
}

}
