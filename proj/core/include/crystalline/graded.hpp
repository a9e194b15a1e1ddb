#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crystalline/lattice.hpp"

namespace crystalline {

// Graded full lattice sum_g I_g u_g, one nonzero fractional ideal per
// group element.
struct GradedLattice {
    RingPtr ring;
    std::vector<FracIdeal> comps;
};

struct GrAmbiguousError : Error {
    explicit GrAmbiguousError(std::vector<GradedLattice> antichain_)
        : Error("E_GR_AMBIGUOUS",
                "several incomparable gr-maximal orders contain the given order"),
          antichain(std::move(antichain_)) {}
    std::vector<GradedLattice> antichain;
};

struct GradedFactorization {
    std::vector<std::pair<GradedLattice, unsigned>> factors;
    GradedLattice witness;
};

GradedLattice make_graded(const RingPtr& A, std::vector<FracIdeal> comps);
bool gr_equal(const GradedLattice& X, const GradedLattice& Y);
int gr_cmp(const GradedLattice& X, const GradedLattice& Y);
bool gr_contains(const GradedLattice& X, const GradedLattice& Y);  // Y subset of X

// coefficient ideal { a in K : a u_g in M }
FracIdeal component_ideal(const FullLattice& M, int g);

bool is_graded(const FullLattice& M);
GradedLattice to_graded(const FullLattice& M);  // NotGraded unless graded
FullLattice from_graded(const GradedLattice& G);

GradedLattice gr_mul(const GradedLattice& X, const GradedLattice& Y);
GradedLattice gr_scale(const GradedLattice& X, const KElem& k);

// { x : X x X in X }, componentwise
GradedLattice gr_inverse(const GradedLattice& X);

bool gr_validate_order(const GradedLattice& X);

// The unique gr-maximal order containing X when it exists; throws
// GrAmbiguousError with the full antichain otherwise.
GradedLattice gr_maximize(const GradedLattice& X);
bool gr_is_maximal(const GradedLattice& X);

std::vector<GradedLattice> gr_primes_above(const GradedLattice& order, const BigInt& p);

GradedFactorization gr_factor(const GradedLattice& order, const GradedLattice& M,
                              std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// Constructive fullness certificate for a graded ideal given by homogeneous
// generators (zero components allowed, not all): one nonzero homogeneous
// element of K*I per group element.
std::vector<AElement> graded_ideal_is_full(const RingPtr& A, const std::vector<KElem>& comps);

}  // namespace crystalline
