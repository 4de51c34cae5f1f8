#include <doctest.h>

#include "cohomolab/bar.hpp"
#include "cohomolab/ring_models.hpp"

using namespace coho;

namespace {

bool same_on_basis(const RingModel& r, const RingAutomorphism& f, const RingAutomorphism& g, std::uint32_t d)
{
    for (std::uint32_t n = 0; n <= d; ++n)
        for (const auto& m : r.basis(n))
            if (f.apply(r.monomial(m)) != g.apply(r.monomial(m))) return false;
    return true;
}

}

TEST_SUITE("cohomology_ring_models") {

TEST_CASE("model is a graded-commutative associative algebra")
{
    for (std::uint32_t p : {3u, 5u, 7u}) {
        RingModel r(p);
        CAPTURE(p);
        CHECK(check_associativity(r, 40, 500, 11).ok);
        CHECK(check_commutativity(r, 40, 500, 12).ok);
        CHECK(failing_relations(r).empty());
    }
}

TEST_CASE("basis dimensions for p = 3")
{
    RingModel r(3);
    std::vector<std::size_t> d;
    for (std::uint32_t n = 0; n <= 8; ++n) d.push_back(r.basis(n).size());
    CHECK(d == std::vector<std::size_t>{1, 0, 2, 2, 4, 3, 5, 4, 6});
}

TEST_CASE("universal coefficients against the bar complex")
{
    // dim H^n(G;F_p) = m_n + m_{n+1} for the integral model dimensions m_n
    RingModel r(3);
    auto bar = cohomology_dims_mod_p(p_group_P(3, 3), 3, 4);
    for (std::uint32_t n = 1; n <= 4; ++n) CHECK(bar[n] == r.basis(n).size() + r.basis(n + 1).size());
}

TEST_CASE("products with chi")
{
    RingModel r(7);
    CHECK(r.mul(r.beta(), r.chi(6)) == r.scale(r.pow(r.beta(), 7), 6));
    CHECK(r.mul(r.beta(), r.chi(3)).empty());
}

TEST_CASE("automorphisms compose contravariantly in the matrix")
{
    RingModel r(5);
    MatFp m{{1, 2}, {0, 3}}, n{{2, 1}, {1, 1}};
    auto fm = RingAutomorphism::from_matrix(r, m, 2);
    auto fn = RingAutomorphism::from_matrix(r, n, 3);
    auto fnm = RingAutomorphism::from_matrix(r, mat_mul(n, m, 5), 6);
    CHECK(same_on_basis(r, fm.compose(fn), fnm, 16));
    CHECK(fm.check_multiplicative(30, 200, 3).ok);
}

TEST_CASE("named actions are ring maps")
{
    RingModel r3(3), r7(7);
    for (const auto& f : named_action(r3, "D8")) CHECK(f.check_multiplicative(30, 200, 4).ok);
    for (const auto& f : named_action(r3, "D8-det")) CHECK(f.check_multiplicative(30, 200, 4).ok);
    for (const auto& f : named_action(r7, "S3xC3")) CHECK(f.check_multiplicative(40, 200, 5).ok);
    CHECK(canonical_action_name("S3xC3-1.2") == "S3xC3");
    CHECK(named_action(r3, "C3-shear-0.0").size() == 1);
    CHECK_THROWS(named_action(r3, "nonsense"));
}

TEST_CASE("shear fixed ring")
{
    CHECK(check_shear_fixed_ring(3, 30).pass());
    CHECK(check_shear_fixed_ring(5, 40).pass());
    auto control = check_shear_fixed_ring(3, 30, true);
    CHECK_FALSE(control.pass());
    CHECK(control.even.first_mismatch == 1u);
}

TEST_CASE("D8 fixed ring with the printed images has an unexplained class")
{
    auto rep = check_d8_fixed_ring(24, true);
    CHECK(rep.span_fixed);
    CHECK(rep.generators_fixed);
    CHECK_FALSE(rep.fixed_vs_span.pass());
    CHECK(rep.fixed_vs_span.first_mismatch == 10u);
    REQUIRE_FALSE(rep.unexplained.empty());
    CHECK(rep.stable_under_normaliser);
}

TEST_CASE("D8 fixed ring with the determinant-consistent action")
{
    auto rep = check_d8_fixed_ring(60, false);
    CHECK(rep.pass());
}

TEST_CASE("S3 x C3 fixed ring at p = 7")
{
    CHECK(check_s3xc3_fixed_ring(60).pass());
}

TEST_CASE("the mu nu constant does not change the fixed ring")
{
    RingModel a(7, 1), b(7, 3);
    auto fa = named_action(a, "S3xC3"), fb = named_action(b, "S3xC3");
    for (std::uint32_t d = 0; d <= 40; ++d) CHECK(fixed_subspace(a, fa, d).size() == fixed_subspace(b, fb, d).size());
    CHECK(check_s3xc3_fixed_ring(40, 3).pass());
}

TEST_CASE("restriction to K")
{
    RingModel r(7);
    auto res = restriction_to_K(r);
    const auto& t = *res.target;
    Element z = t.gen(0), e = t.gen(1), d = t.ext_gen(0);
    auto a = r.alpha(), b = r.beta();
    CHECK(res.apply(r.mul(r.pow(a, 3), r.pow(b, 3))) == t.scale(t.pow(e, 6), -1));
    auto x = r.mul(r.sub(r.mul(r.pow(a, 5), b), r.mul(r.pow(a, 2), r.pow(b, 4))), r.mu());
    CHECK(res.apply(x) == t.scale(t.mul(t.pow(e, 6), d), -2));
    auto y = r.mul(r.zeta(), r.sub(r.mul(r.pow(a, 5), r.pow(b, 2)), r.mul(r.pow(a, 2), r.pow(b, 5))));
    CHECK(res.apply(y) == t.scale(t.mul(z, t.pow(e, 7)), 2));
    auto w = r.sub(r.pow(r.zeta(), 6), r.mul(r.pow(a, 39), r.pow(b, 3)));
    CHECK(res.apply(w) == t.add(t.pow(z, 6), t.pow(e, 42)));
    CHECK(res.check_multiplicative(40, 200, 6).ok);
    CHECK(check_k_restriction(100).pass());
}

TEST_CASE("restriction to <B,C> is multiplicative")
{
    RingModel r(3);
    CHECK(restriction_to_BC(r).check_multiplicative(30, 200, 7).ok);
}

}
