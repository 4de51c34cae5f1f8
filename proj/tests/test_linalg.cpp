#include <doctest.h>

#include <sstream>

#include "cohomolab/linalg.hpp"

using namespace coho;

TEST_SUITE("exact_linalg") {

TEST_CASE("modular helpers")
{
    CHECK(mod_pow(3, 4, 7) == 4);
    CHECK(mod_mul(mod_inv(5, 11), 5, 11) == 1);
    CHECK(is_prime(2));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), std::overflow_error);
}

TEST_CASE("rank mod p depends on the prime")
{
    MatrixFp a(2, 2, 3), b(2, 2, 5);
    // [[1,2],[2,1]] has determinant -3
    for (auto* m : {&a, &b}) {
        m->add(0, 0, 1);
        m->add(0, 1, 2);
        m->add(1, 0, 2);
        m->add(1, 1, 1);
        m->finalize();
    }
    CHECK(rank_mod_p(a) == 1);
    CHECK(rank_mod_p(b) == 2);
}

TEST_CASE("Smith form of small integer matrices")
{
    MatrixZ m(2, 2);
    m.add(0, 0, 2);
    m.add(0, 1, 4);
    m.add(1, 0, 6);
    m.add(1, 1, 8);
    m.finalize();
    auto s = smith_normal_form(m);
    CHECK(s.rank == 2);
    REQUIRE(s.elementary_divisors.size() == 2);
    CHECK(s.elementary_divisors[0] == 2);
    CHECK(s.elementary_divisors[1] == 4);

    MatrixZ z(3, 2);
    z.finalize();
    CHECK(smith_normal_form(z).rank == 0);

    // boundary of a triangle's edges onto its vertices: rank 2, no torsion
    MatrixZ d(3, 3);
    d.add(0, 0, -1); d.add(1, 0, 1);
    d.add(0, 1, -1); d.add(2, 1, 1);
    d.add(1, 2, -1); d.add(2, 2, 1);
    d.finalize();
    auto t = smith_normal_form(d);
    CHECK(t.rank == 2);
    CHECK(t.torsion().empty());
}

TEST_CASE("solve and kernel")
{
    MatrixFp m(2, 3, 5);
    m.add(0, 0, 1);
    m.add(0, 1, 1);
    m.add(1, 1, 1);
    m.add(1, 2, 1);
    m.finalize();
    auto x = solve(m, {2, 3});
    REQUIRE(x);
    CHECK(((*x)[0] + (*x)[1]) % 5 == 2);
    CHECK(((*x)[1] + (*x)[2]) % 5 == 3);
    auto k = kernel_mod_p(m);
    CHECK(k.size() == 1);

    MatrixZ z(1, 1);
    z.add(0, 0, 2);
    z.finalize();
    CHECK_FALSE(solve(z, {Integer(1)}));
    CHECK(solve(z, {Integer(6)}));
}

TEST_CASE("coordinate format round trip")
{
    MatrixZ m(3, 4);
    m.add(0, 1, -7);
    m.add(2, 3, 5);
    m.finalize();
    std::stringstream ss;
    write_coordinate(ss, m);
    auto back = read_coordinate_z(ss);
    CHECK(back.rows() == 3);
    CHECK(back.cols() == 4);
    CHECK(back.nnz() == 2);
}

TEST_CASE("echelon basis")
{
    EchelonBasisFp e(3, 7, true);
    CHECK(e.insert({{0, 1}, {1, 2}}));
    CHECK(e.insert({{1, 1}}));
    CHECK_FALSE(e.insert({{0, 3}, {1, 5}}));
    CHECK(e.rank() == 2);
    EchelonBasisFp::SparseVec combo;
    CHECK(e.reduce({{0, 2}, {1, 4}}, &combo).empty());
}

}
