#pragma once

// Shared test fixtures: small crossed-product rings over the supported base
// rings, plus deterministic random generators for property checks.

#include <cstdint>
#include <vector>

#include "crystalline/graded.hpp"
#include "crystalline/lattice.hpp"

namespace fixtures {

using namespace crystalline;

inline RMat alpha_c2(const RElem& self) {
    return {{RElem(1), RElem(1)}, {RElem(1), self}};
}

// Z with the trivial group
inline RingPtr t1() {
    return make_crystal_ring(RingSpec::integers(), GroupTable::cyclic(1), {{false}},
                             {{RElem(1)}});
}

// the group ring Z[C2]
inline RingPtr t2() {
    return make_crystal_ring(RingSpec::integers(), GroupTable::cyclic(2), {{false}, {false}},
                             alpha_c2(RElem(1)));
}

// gaussian integers, conjugation action, u^2 = -1 (rational quaternions)
inline RingPtr t3() {
    return make_crystal_ring(RingSpec::quadratic(-1), GroupTable::cyclic(2), {{false}, {true}},
                             alpha_c2(RElem(-1)));
}

// Z, trivial action, u^2 = 5 (the real quadratic field Q(sqrt 5))
inline RingPtr u5() {
    return make_crystal_ring(RingSpec::integers(), GroupTable::cyclic(2), {{false}, {false}},
                             alpha_c2(RElem(5)));
}

// gaussian integers, trivial action, u^2 = -1 (split: K x K)
inline RingPtr t4() {
    return make_crystal_ring(RingSpec::quadratic(-1), GroupTable::cyclic(2), {{false}, {false}},
                             alpha_c2(RElem(-1)));
}

// gaussian integers, conjugation, u^2 = -5 (ambiguous graded maximization)
inline RingPtr t5() {
    return make_crystal_ring(RingSpec::quadratic(-1), GroupTable::cyclic(2), {{false}, {true}},
                             alpha_c2(RElem(-5)));
}

// Z[sqrt 2], conjugation, u^2 = 1 (a crossed product isomorphic to M_2(Q))
inline RingPtr tsqrt2() {
    return make_crystal_ring(RingSpec::quadratic(2), GroupTable::cyclic(2), {{false}, {true}},
                             alpha_c2(RElem(1)));
}

inline KElem k(long a, long b = 0, long den = 1) {
    return knormalize({RElem(a, b), den});
}

inline AElement elem(const RingPtr& A, std::vector<KElem> coeffs) {
    return elem_from_coeffs(A, KRow(coeffs.begin(), coeffs.end()));
}

// the Hurwitz-type maximal order above the standard lattice of t3
inline FullLattice hurwitz(const RingPtr& A) {
    std::vector<AElement> gens{
        elem(A, {k(1), k(0)}),
        elem(A, {k(0), k(1)}),
        elem(A, {k(1, 1, 2), k(1, 1, 2)}),  // (1 + i + u + i u)/2
    };
    return lattice_from_generators(A, gens);
}

// deterministic pseudo-random stream (unaffected by stdlib distributions)
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + (long)(next() % (std::uint64_t)(hi - lo + 1));
    }
};

inline KElem random_k(const RingPtr& A, Rng& rng, long coeff_bound = 10, long den_bound = 6) {
    long a = rng.range(-coeff_bound, coeff_bound);
    long b = A->ring.degree() == 2 ? rng.range(-coeff_bound, coeff_bound) : 0;
    long den = rng.range(1, den_bound);
    return knormalize({RElem(a, b), den});
}

inline AElement random_elem(const RingPtr& A, Rng& rng, long coeff_bound = 10,
                            long den_bound = 6) {
    KRow coeffs;
    for (int g = 0; g < A->n(); ++g) coeffs.push_back(random_k(A, rng, coeff_bound, den_bound));
    return elem_from_coeffs(A, coeffs);
}

// random full bimodule lattice (retries until the generators span)
inline FullLattice random_lattice(const RingPtr& A, Rng& rng, long coeff_bound = 10,
                                  long den_bound = 6) {
    for (;;) {
        std::vector<AElement> gens;
        for (int i = 0; i < A->flat_dim(); ++i)
            gens.push_back(random_elem(A, rng, coeff_bound, den_bound));
        try {
            return lattice_from_generators(A, gens);
        } catch (const NotFullError&) {
        }
    }
}

}  // namespace fixtures
