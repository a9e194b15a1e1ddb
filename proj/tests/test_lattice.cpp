#include <doctest.h>

#include "crystalline/lattice.hpp"
#include "fixtures.hpp"

using namespace crystalline;
using fixtures::elem;
using fixtures::k;

TEST_CASE("standard lattices come out canonical") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(L0.den == 1);
    CHECK(L0.rbasis == rmat_identity(2));

    // closure under the right action held without extra generators:
    // u * theta = sigma(theta) u is already in the span
    FullLattice from_two = lattice_from_generators(
        A, {elem(A, {k(1), k(0)}), elem(A, {k(0), k(1)})});
    CHECK(lat_equal(L0, from_two));

    RingPtr T2 = fixtures::t2();
    FullLattice Z2 = lattice_standard(T2);
    CHECK(Z2.den == 1);

    RingPtr T1 = fixtures::t1();
    FullLattice half = lattice_from_generators(T1, {elem(T1, {k(1, 0, 2)})});
    CHECK(half.den == 2);
    CHECK(half.rbasis == rmat_identity(1));

    CHECK_THROWS_AS(
        lattice_from_generators(A, {elem(A, {k(1), k(0)})}),
        NotFullError);  // rank 1 only
}

TEST_CASE("membership, equality, sum, scale") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(member(L0, elem(A, {k(3, -2), k(5, 1)})));
    CHECK(!member(L0, elem(A, {k(1, 1, 2), k(0)})));  // (1+i)/2 u_e
    CHECK(lat_equal(L0, lat_sum(L0, L0)));
    FullLattice twoL = lat_scale(L0, k(2));
    CHECK(lat_contains(L0, twoL));
    CHECK(!lat_contains(twoL, L0));
    CHECK(lat_index(L0, twoL) == 16);  // 2^4 in flat coordinates
}

TEST_CASE("intersection") {
    RingPtr T1 = fixtures::t1();
    FullLattice twoZ = lat_scale(lattice_standard(T1), k(2));
    FullLattice threeZ = lat_scale(lattice_standard(T1), k(3));
    CHECK(lat_equal(lat_intersect(twoZ, threeZ), lat_scale(lattice_standard(T1), k(6))));

    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    FullLattice P = lat_scale(L0, k(1, 1));  // (1+i) L0
    CHECK(lat_equal(lat_intersect(L0, P), P));
    CHECK(lat_equal(lat_intersect(L0, L0), L0));
}

TEST_CASE("lattice products") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(lat_equal(lat_mul(L0, L0), L0));

    // P^2 = 2 L0, cross-checked against the hand-expanded generators
    FullLattice P = lattice_from_generators(
        A, {elem(A, {k(1, 1), k(0)}), elem(A, {k(0), k(1, 1)})});
    FullLattice P2 = lat_mul(P, P);
    CHECK(lat_equal(P2, lat_scale(L0, k(2))));
    FullLattice expanded = lattice_from_generators(
        A, {elem(A, {k(0, 2), k(0)}), elem(A, {k(0), k(0, 2)}), elem(A, {k(0), k(2)}),
            elem(A, {k(-2), k(0)})});
    CHECK(lat_equal(P2, expanded));

    // multiplying the group ring by the bigger order absorbs it
    RingPtr T2 = fixtures::t2();
    FullLattice Z2 = lattice_standard(T2);
    FullLattice half = lattice_from_generators(
        T2, {elem(T2, {k(1), k(0)}), elem(T2, {k(1, 0, 2), k(1, 0, 2)})});
    CHECK(lat_equal(lat_mul(Z2, half), half));
}

TEST_CASE("integral_solution frozen examples") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);

    KMat id = kmat_identity(2);
    CHECK(lat_equal(integral_solution(id, L0), L0));

    KMat twice = id;
    twice[0][0] = k(2);
    twice[1][1] = k(2);
    CHECK(lat_equal(integral_solution(twice, L0), lat_scale(L0, k(1, 0, 2))));

    KMat Ru = right_mul_matrix(elem_u(A, 1));
    CHECK(lat_equal(integral_solution(Ru, L0), L0));

    KMat rank1(2, KRow(2, k(0)));
    rank1[0][0] = k(1);
    CHECK_THROWS_AS(integral_solution(rank1, L0), RankDeficientError);
}

TEST_CASE("left and right orders") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(lat_equal(left_order(L0), L0));
    CHECK(lat_equal(right_order(L0), L0));

    // idempotent-closed lattice is its own left order
    RingPtr T2 = fixtures::t2();
    FullLattice half = lattice_from_generators(
        T2, {elem(T2, {k(1), k(0)}), elem(T2, {k(1, 0, 2), k(1, 0, 2)})});
    CHECK(lat_equal(left_order(half), half));
    CHECK(is_order(half));

    // scaling by an invariant element changes neither order
    fixtures::Rng rng(55);
    for (auto mk : {fixtures::t1, fixtures::t2, fixtures::t3, fixtures::u5}) {
        RingPtr B = mk();
        for (int it = 0; it < 6; ++it) {
            FullLattice M = fixtures::random_lattice(B, rng, 6, 3);
            FullLattice Ms = lat_scale(M, k(3, 0, 2));
            CHECK(lat_equal(left_order(M), left_order(Ms)));
            CHECK(lat_equal(right_order(M), right_order(Ms)));
        }
    }
}

TEST_CASE("inverse lattices: frozen examples") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(lat_equal(inverse_lattice(L0), L0));

    FullLattice P = lat_scale(L0, k(1, 1));
    FullLattice Pinv = inverse_lattice(P);
    CHECK(lat_equal(Pinv, lat_scale(P, k(1, 0, 2))));
    CHECK(lat_equal(lat_mul(P, Pinv), L0));

    RingPtr T1 = fixtures::t1();
    FullLattice threeZ = lat_scale(lattice_standard(T1), k(3));
    CHECK(lat_equal(inverse_lattice(threeZ), lat_scale(lattice_standard(T1), k(1, 0, 3))));
}

TEST_CASE("the three inverse characterizations agree") {
    fixtures::Rng rng(99);
    for (auto mk : {fixtures::t1, fixtures::t2, fixtures::t3, fixtures::u5, fixtures::t4,
                    fixtures::tsqrt2}) {
        RingPtr A = mk();
        for (int it = 0; it < 8; ++it) {
            FullLattice M = fixtures::random_lattice(A, rng, 6, 4);
            FullLattice i1 = inverse_lattice(M);
            CHECK(lat_equal(i1, inverse_via_right(M)));
            CHECK(lat_equal(i1, inverse_via_definition(M)));
        }
    }
}

TEST_CASE("order and inverse interplay on random lattices") {
    fixtures::Rng rng(1234);
    for (auto mk : {fixtures::t2, fixtures::t3, fixtures::u5}) {
        RingPtr A = mk();
        for (int it = 0; it < 10; ++it) {
            FullLattice M = fixtures::random_lattice(A, rng, 8, 5);
            FullLattice ol = left_order(M), orr = right_order(M);
            CHECK(is_order(ol));
            CHECK(is_order(orr));
            CHECK(member(ol, elem_one(A)));
            CHECK(member(orr, elem_one(A)));
            FullLattice inv = inverse_lattice(M);
            // O_r(M^-1) contains O_l(M), and symmetrically
            CHECK(lat_contains(right_order(inv), ol));
            CHECK(lat_contains(left_order(inv), orr));
            // M inside its left order iff inside its right order
            CHECK(lat_contains(ol, M) == lat_contains(orr, M));
        }
    }
}

TEST_CASE("lattice algebra laws") {
    fixtures::Rng rng(31337);
    RingPtr A = fixtures::t3();
    for (int it = 0; it < 6; ++it) {
        FullLattice M = fixtures::random_lattice(A, rng, 5, 3);
        FullLattice N = fixtures::random_lattice(A, rng, 5, 3);
        FullLattice P = fixtures::random_lattice(A, rng, 5, 3);
        CHECK(lat_equal(lat_mul(lat_mul(M, N), P), lat_mul(M, lat_mul(N, P))));
        CHECK(lat_equal(lat_sum(M, lat_intersect(M, N)), M));
        CHECK(lat_equal(lat_intersect(M, lat_sum(M, N)), M));
        CHECK(lat_equal(lat_sum(M, N), lat_sum(N, M)));
    }
}

TEST_CASE("is_order and two-sided ideal checks") {
    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    CHECK(is_order(L0));
    CHECK(!is_order(lat_scale(L0, k(1, 0, 2))));
    CHECK(is_two_sided_ideal(L0, lat_scale(L0, k(2))));
    FullLattice P = lat_scale(L0, k(1, 1));
    CHECK(is_two_sided_ideal(L0, P));
}

TEST_CASE("scaling witnesses are minimal") {
    RingPtr T1 = fixtures::t1();
    FullLattice Z = lattice_standard(T1);
    auto [r0, s0] = scaling_witness(Z, Z);
    CHECK(r0 == 1);
    CHECK(s0 == 1);
    FullLattice third = lat_scale(Z, k(1, 0, 3));
    auto [r1, s1] = scaling_witness(third, Z);
    CHECK(r1 == 3);
    CHECK(s1 == 3);

    RingPtr A = fixtures::t3();
    FullLattice L0 = lattice_standard(A);
    auto [r2, s2] = scaling_witness(L0, lat_scale(L0, k(2)));
    CHECK(r2 == 2);
    CHECK(s2 == 2);
    // witness actually scales M into N
    FullLattice scaled = lat_scale(L0, k(2));
    CHECK(lat_contains(scaled, lat_scale(L0, kfrom_int(r2))));
}

TEST_CASE("canonical forms are generator independent") {
    fixtures::Rng rng(777);
    for (auto mk : {fixtures::t3, fixtures::tsqrt2}) {
        RingPtr A = mk();
        for (int it = 0; it < 6; ++it) {
            FullLattice M = fixtures::random_lattice(A, rng, 5, 3);
            // regenerate from random integer combinations of the flat basis
            std::vector<AElement> zs = lattice_zelements(M);
            std::vector<AElement> gens;
            for (int i = 0; i < A->flat_dim(); ++i) {
                AElement acc = elem_zero(A);
                for (const AElement& z : zs) {
                    long c = rng.range(-2, 2);
                    if (c != 0) acc = elem_add(acc, elem_scale(kfrom_int(c), z));
                }
                gens.push_back(acc);
            }
            for (const AElement& z : zs) gens.push_back(z);  // keep it full
            FullLattice M2 = lattice_from_generators(A, gens);
            CHECK(lat_equal(M, M2));
            CHECK(M.den == M2.den);
            CHECK(M.rbasis == M2.rbasis);
        }
    }
}
