#pragma once

#include <vector>

#include "crystalline/crystal.hpp"

namespace crystalline {

// Full R-lattice in A, canonically represented: den is the least positive
// integer with den*M integral, rbasis is the canonical n x n Hermite basis of
// den*M over R, zbasis the canonical Hermite basis of den*M over Z in flat
// coordinates.  Lattices are closed under both R-actions; in this basis that
// amounts to stability under right multiplication by theta.
struct FullLattice {
    RingPtr ring;
    BigInt den = 1;
    RMat rbasis;
    RMat zbasis;

    int n() const { return ring->n(); }
    int dim() const { return ring->flat_dim(); }
};

// smallest R-bimodule lattice containing the generators; NotFull when the
// span has rank < n
FullLattice lattice_from_generators(const RingPtr& A, const std::vector<AElement>& gens);

// canonicalize a flat-row description of a set already known to be an
// R-bimodule (used by the preimage engine); checks that assumption
FullLattice lattice_from_flat_rows(const RingPtr& A, RMat rows, const BigInt& den);

FullLattice lattice_standard(const RingPtr& A);  // R-span of the u_g

std::vector<AElement> lattice_relements(const FullLattice& M);  // n rows of rbasis / den
std::vector<AElement> lattice_zelements(const FullLattice& M);  // flat_dim rows of zbasis / den

bool lat_equal(const FullLattice& M, const FullLattice& N);
int lat_cmp(const FullLattice& M, const FullLattice& N);  // deterministic total order
bool member(const FullLattice& M, const AElement& x);
bool lat_contains(const FullLattice& M, const FullLattice& N);  // N subset of M
FullLattice lat_sum(const FullLattice& M, const FullLattice& N);
FullLattice lat_scale(const FullLattice& M, const KElem& k);  // k*M, k nonzero
FullLattice lat_intersect(const FullLattice& M, const FullLattice& N);
FullLattice lat_mul(const FullLattice& M, const FullLattice& N);

// index [N : M] of M inside N as abelian groups
BigInt lat_index(const FullLattice& N, const FullLattice& M);

// { x : for all j, x * maps[j] lies in targets[j] }; the stacked map must be
// injective (RankDeficient otherwise) and the solution set an R-bimodule
FullLattice solve_preimage(const RingPtr& A, const std::vector<FlatMap>& maps,
                           const std::vector<const FullLattice*>& targets);

// { v : v * T in L } for T an n x n matrix over K with independent columns
FullLattice integral_solution(const KMat& T, const FullLattice& L);

FullLattice left_order(const FullLattice& M);   // { x : x M in M }
FullLattice right_order(const FullLattice& M);  // { x : M x in M }

// M^{-1} = { x : M x M in M }, computed as { x : M x in O_l(M) }.  The two
// other characterizations are exposed for cross-checking.
FullLattice inverse_lattice(const FullLattice& M);
FullLattice inverse_via_right(const FullLattice& M);       // { x : x M in O_r(M) }
FullLattice inverse_via_definition(const FullLattice& M);  // { x : M x M in M }

bool is_order(const FullLattice& M);
bool is_two_sided_ideal(const FullLattice& order, const FullLattice& M);

// minimal positive integers r, s with r*M in N and M*s in N
std::pair<BigInt, BigInt> scaling_witness(const FullLattice& M, const FullLattice& N);

}  // namespace crystalline
