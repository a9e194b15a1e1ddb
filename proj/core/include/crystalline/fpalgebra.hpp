#pragma once

#include <vector>

#include "crystalline/lattice.hpp"

namespace crystalline {

using FpVec = std::vector<BigInt>;   // entries in [0, p)
using FpBasis = std::vector<FpVec>;  // row-reduced echelon basis

// --- small F_p linear algebra ----------------------------------------------

FpBasis fp_rref(FpBasis rows, const BigInt& p);
bool fp_in_span(const FpBasis& rref, FpVec v, const BigInt& p);
// { lambda : lambda * A = 0 }
FpBasis fp_left_nullspace(const std::vector<FpVec>& A, const BigInt& p);

// --- quotient of a lattice by a sublattice of prime exponent ---------------

struct FpQuotient {
    RingPtr ring;
    FullLattice amb, sub;
    BigInt p;
    RMat rel_hnf;                // basis of sub written in amb coordinates
    std::vector<int> proj_cols;  // coordinates carrying the F_p structure
    int dim = 0;

    FpVec project(const AElement& x) const;  // x must lie in amb
    AElement lift(const FpVec& v) const;
    AElement lift_basis(int k) const;
};

FpQuotient fp_quotient(const FullLattice& amb, const FullLattice& sub, const BigInt& p);

// --- the finite algebra Lambda / pi*Lambda ---------------------------------

struct FpAlgebra {
    FpQuotient q;
    std::vector<std::vector<FpVec>> mult;  // mult[i][j] = e_i * e_j
    FpVec one;

    const BigInt& p() const { return q.p; }
    int dim() const { return q.dim; }
    FpVec mul(const FpVec& x, const FpVec& y) const;
    FpVec pow(const FpVec& x, unsigned e) const;
    // row-convention matrix of v |-> x*v (row i is x * e_i)
    std::vector<FpVec> left_regular(const FpVec& x) const;
};

// pi is a central prime of R^G: a rational prime, or a prime element of a
// quadratic R when the group action is trivial
FpAlgebra fp_algebra(const FullLattice& order, const RElem& pi);

// coefficients c_1..c_m of det(lambda I - M) mod p (signs per the expansion
// det = lambda^m + c_1 lambda^{m-1} + ... + c_m)
std::vector<BigInt> charpoly_mod_p(const std::vector<FpVec>& M, const BigInt& p);

// Jacobson radical, via the characteristic-coefficient chain that replaces
// the plain trace form when p does not exceed the dimension
FpBasis fp_radical(const FpAlgebra& A);

FpBasis fp_center(const FpAlgebra& A);

// subspaces (in algebra coordinates) of the maximal two-sided ideals,
// deterministically ordered
std::vector<FpBasis> fp_maximal_two_sided(const FpAlgebra& A);

// all two-sided ideals by closure enumeration; requires p^dim <= budget
std::vector<FpBasis> fp_all_two_sided(const FpAlgebra& A, unsigned long budget);

// --- finite modules over an order -------------------------------------------

// Lambda-module amb/sub of exponent p with the left action of `order`
struct FpModule {
    FpQuotient q;
    std::vector<AElement> actors;            // lattice generators of the order
    std::vector<std::vector<FpVec>> action;  // action[a][i] = actor_a * e_i

    FpVec act(std::size_t a, const FpVec& v) const;
    FpBasis submodule_closure(const FpBasis& seed) const;
};

FpModule fp_module(const FullLattice& order, const FullLattice& amb, const FullLattice& sub,
                   const BigInt& p);

// every submodule, by cyclic closure and sums; requires p^dim <= budget
std::vector<FpBasis> fp_all_submodules(const FpModule& M, unsigned long budget);

// a maximal proper submodule (deterministic choice); dim must be positive
FpBasis fp_maximal_submodule(const FpModule& M, unsigned long budget);

}  // namespace crystalline
