#include <doctest.h>

#include "crystalline/crystal.hpp"
#include "fixtures.hpp"

using namespace crystalline;
using fixtures::elem;
using fixtures::k;

namespace {

KElem rational_part(const KElem& x) { return knormalize({RElem(x.num.a), x.den}); }
KElem theta_part(const KElem& x) { return knormalize({RElem(x.num.b), x.den}); }

// Independent model of the t3 product: rational quaternions with basis
// (1, i, j, k), element (a + b i) + (c + d i) u  <->  a + b i + c j + d k.
struct Quat {
    KElem c[4];
};

Quat quat_of(const AElement& x) {
    return {{rational_part(x.coeffs[0]), theta_part(x.coeffs[0]), rational_part(x.coeffs[1]),
             theta_part(x.coeffs[1])}};
}

Quat quat_mul(const Quat& x, const Quat& y) {
    static const int table[4][4][2] = {
        // basis products e_i e_j = sign * e_k
        {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
        {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
        {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
        {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
    };
    RingSpec Z = RingSpec::integers();
    Quat z{{k(0), k(0), k(0), k(0)}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            KElem term = kmul(Z, x.c[i], y.c[j]);  // plain rational product
            int tgt = table[i][j][0], sign = table[i][j][1];
            if (sign < 0) term = kneg(term);
            z.c[tgt] = kadd(z.c[tgt], term);
        }
    return z;
}

bool quat_eq(const Quat& a, const Quat& b) {
    for (int i = 0; i < 4; ++i)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("validate_ring accepts the fixtures and flags centrality") {
    for (auto mk : {fixtures::t1, fixtures::t2, fixtures::u5, fixtures::t4, fixtures::t5,
                    fixtures::tsqrt2}) {
        RingPtr A = mk();
        CHECK(A->n() >= 1);
    }
    RingPtr t3 = fixtures::t3();
    CHECK(t3->centrally_crystalline);  // alpha values are rational integers
    CHECK(t3->invariants_are_integers());
    RingPtr t4 = fixtures::t4();
    CHECK(!t4->invariants_are_integers());  // trivial action keeps R^G = R
}

TEST_CASE("validate_ring names the first violated identity") {
    RingSpec R = RingSpec::quadratic(-1);
    GroupTable C2 = GroupTable::cyclic(2);
    std::vector<SigmaAction> conj{{false}, {true}};

    // alpha(e,g) must be 1
    RMat bad = fixtures::alpha_c2(RElem(-1));
    bad[0][1] = RElem(2);
    ValidityReport rep = validate_ring(R, C2, conj, bad);
    CHECK(!rep.ok);
    CHECK(rep.identity == "alpha(e,g)=1");
    CHECK(rep.g == 1);

    // zero entry
    RMat zero = fixtures::alpha_c2(RElem(0));
    rep = validate_ring(R, C2, conj, zero);
    CHECK(!rep.ok);
    CHECK(rep.identity == "alpha-nonzero");

    // alpha(g,g) = i is not sigma-invariant: eq1 at (g,g,g) fails
    RMat tw = fixtures::alpha_c2(RElem(0, 1));
    rep = validate_ring(R, C2, conj, tw);
    CHECK(!rep.ok);
    CHECK(rep.identity == "eq1");

    // broken group table
    GroupTable broken = C2;
    broken.mul[1][1] = 1;
    rep = validate_ring(R, broken, conj, fixtures::alpha_c2(RElem(-1)));
    CHECK(!rep.ok);
    CHECK(rep.identity == "group-inverse");

    // conjugation over Z is rejected
    rep = validate_ring(RingSpec::integers(), C2, conj, fixtures::alpha_c2(RElem(1)));
    CHECK(!rep.ok);
    CHECK(rep.identity == "sigma-valid");

    CHECK_THROWS_AS(make_crystal_ring(R, C2, conj, bad), ValidationError);
}

TEST_CASE("t3 multiplication matches the quaternion model") {
    RingPtr A = fixtures::t3();
    // (i u)(i u) = i sigma(i) alpha(g,g) = -1
    AElement iu = elem(A, {k(0), k(0, 1)});
    AElement prod = elem_mul(iu, iu);
    CHECK(elem_eq(prod, elem(A, {k(-1), k(0)})));

    fixtures::Rng rng(42);
    for (int it = 0; it < 100; ++it) {
        AElement x = fixtures::random_elem(A, rng, 5, 3);
        AElement y = fixtures::random_elem(A, rng, 5, 3);
        CHECK(quat_eq(quat_of(elem_mul(x, y)), quat_mul(quat_of(x), quat_of(y))));
    }
}

TEST_CASE("ring axioms hold elementwise in every fixture") {
    for (auto mk : {fixtures::t1, fixtures::t2, fixtures::t3, fixtures::u5, fixtures::t4,
                    fixtures::tsqrt2}) {
        RingPtr A = mk();
        fixtures::Rng rng(17);
        for (int it = 0; it < 40; ++it) {
            AElement x = fixtures::random_elem(A, rng, 4, 3);
            AElement y = fixtures::random_elem(A, rng, 4, 3);
            AElement z = fixtures::random_elem(A, rng, 4, 3);
            CHECK(elem_eq(elem_mul(elem_mul(x, y), z), elem_mul(x, elem_mul(y, z))));
            CHECK(elem_eq(elem_mul(x, elem_add(y, z)),
                          elem_add(elem_mul(x, y), elem_mul(x, z))));
            CHECK(elem_eq(elem_mul(elem_one(A), x), x));
            CHECK(elem_eq(elem_mul(x, elem_one(A)), x));
        }
        // u_g r = sigma_g(r) u_g on the ring generator
        if (A->ring.kind == RingKind::Quadratic) {
            for (int g = 0; g < A->n(); ++g) {
                AElement ug = elem_u(A, g);
                AElement r = elem_scale(kfrom(RElem(0, 1)), elem_one(A));
                AElement lhs = elem_mul(ug, r);
                AElement rhs = elem_mul(elem_scale(A->sigma(g).apply(A->ring, kfrom(RElem(0, 1))),
                                                   elem_one(A)),
                                        ug);
                CHECK(elem_eq(lhs, rhs));
            }
        }
    }
}

TEST_CASE("multiplication respects the grading") {
    RingPtr A = fixtures::t3();
    fixtures::Rng rng(3);
    for (int g = 0; g < 2; ++g)
        for (int h = 0; h < 2; ++h) {
            AElement x = elem_scale(fixtures::random_k(A, rng, 6, 4), elem_u(A, g));
            AElement y = elem_scale(fixtures::random_k(A, rng, 6, 4), elem_u(A, h));
            AElement p = elem_mul(x, y);
            int tgt = A->group.op(g, h);
            for (int s = 0; s < A->n(); ++s)
                if (s != tgt) CHECK(p.coeffs[s].is_zero());
        }
}

TEST_CASE("grade_decompose splits by support") {
    RingPtr A = fixtures::t2();
    AElement x = elem(A, {k(1), k(2)});
    auto parts = grade_decompose(x);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == 0);
    CHECK(parts[1].first == 1);
    AElement sum = elem_add(parts[0].second, parts[1].second);
    CHECK(elem_eq(sum, x));
    CHECK(grade_decompose(elem_zero(A)).empty());
}

TEST_CASE("regular matrices reproduce multiplication") {
    RingPtr A = fixtures::t3();
    // x = 1 gives identity matrices
    KMat L1 = left_mul_matrix(elem_one(A));
    KMat R1 = right_mul_matrix(elem_one(A));
    CHECK(L1 == kmat_identity(2));
    CHECK(R1 == kmat_identity(2));

    // frozen example: Lx applied to coords of i*u_e equals coords of u_g * i
    AElement ug = elem_u(A, 1);
    KMat Lu = left_mul_matrix(ug);
    KRow coords{k(0, 1), k(0)};
    KRow img = apply_left(A, Lu, coords);
    CHECK(img[0] == k(0));
    CHECK(img[1] == k(0, -1));  // -i at the u_g slot

    // permutation matrix in the group-ring case
    RingPtr T2 = fixtures::t2();
    KMat perm = left_mul_matrix(elem_u(T2, 1));
    CHECK(perm[0][1] == k(1));
    CHECK(perm[1][0] == k(1));
    CHECK(perm[0][0] == k(0));

    fixtures::Rng rng(23);
    for (auto mk : {fixtures::t3, fixtures::tsqrt2, fixtures::u5}) {
        RingPtr B = mk();
        for (int it = 0; it < 30; ++it) {
            AElement x = fixtures::random_elem(B, rng, 5, 3);
            AElement y = fixtures::random_elem(B, rng, 5, 3);
            CHECK(apply_left(B, left_mul_matrix(x), y.coeffs) == elem_mul(x, y).coeffs);
            CHECK(apply_right(B, right_mul_matrix(x), y.coeffs) == elem_mul(y, x).coeffs);
        }
    }
}

TEST_CASE("flat maps agree with multiplication") {
    for (auto mk : {fixtures::t3, fixtures::t4, fixtures::tsqrt2}) {
        RingPtr A = mk();
        fixtures::Rng rng(11);
        for (int it = 0; it < 20; ++it) {
            AElement x = fixtures::random_elem(A, rng, 5, 3);
            AElement y = fixtures::random_elem(A, rng, 5, 3);
            FlatMap L = flat_left_mul(x);
            FlatVec fy = flat_of_elem(y);
            RRow img = rrow_mul_mat(RingSpec::integers(), fy.v, L.mat);
            AElement back = elem_of_flat(A, img, fy.den * L.den);
            CHECK(elem_eq(back, elem_mul(x, y)));
            FlatMap R = flat_right_mul(x);
            RRow img2 = rrow_mul_mat(RingSpec::integers(), fy.v, R.mat);
            CHECK(elem_eq(elem_of_flat(A, img2, fy.den * R.den), elem_mul(y, x)));
        }
    }
}

TEST_CASE("rational and theta parts split coefficients") {
    CHECK(rational_part(fixtures::k(3, 4, 5)) == fixtures::k(3, 0, 5));
    CHECK(theta_part(fixtures::k(3, 4, 5)) == fixtures::k(4, 0, 5));
}
