#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crystalline/lattice.hpp"

namespace crystalline {

struct MaxCertificate {
    RElem disc;                        // canonical associate
    std::vector<RElem> primes_checked; // stabilized primes of R^G
};

struct OrderHandle {
    FullLattice lattice;
    std::optional<MaxCertificate> certificate;
};

// two-sided prime of a maximal order, with the rational prime below it
struct PrimeIdeal {
    FullLattice ideal;
    BigInt below;
};

struct TwoSidedFactorization {
    std::vector<std::pair<PrimeIdeal, unsigned>> factors;  // sorted, with multiplicities
    FullLattice witness;                                   // reassembled product
};

struct LeftFactorization {
    std::vector<FullLattice> factors;  // proper product of maximal integral ideals
    FullLattice witness;
};

// determinant of the regular trace pairing on an R^G-basis of the order
RElem discriminant(const FullLattice& order);

// lift of rad(order / pi*order); a two-sided ideal between pi*order and order
FullLattice radical_mod_prime(const FullLattice& order, const RElem& pi);
FullLattice radical_mod_p(const FullLattice& order, const BigInt& p);

// Ascend to a maximal order: the radical-idealizer chain, then idealizers of
// the maximal two-sided ideals at primes where the radical step has stalled
// (the chain alone stops at hereditary orders).
OrderHandle maximize(const FullLattice& order);
bool is_maximal(const FullLattice& order);

// validated handle for an order that must already be maximal
OrderHandle as_maximal_order(const FullLattice& order);

std::vector<PrimeIdeal> primes_above(const OrderHandle& order, const BigInt& p);

// unique factorization of a two-sided ideal into primes; a shuffle seed
// permutes the division order (the multiset is invariant)
TwoSidedFactorization factor_two_sided(const OrderHandle& order, const FullLattice& M,
                                       std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// proper product of maximal integral left ideals, one per composition factor
LeftFactorization factor_left_ideal(const OrderHandle& order, const FullLattice& M);

bool proper_product_check(const std::vector<FullLattice>& chain);

// the normal ideal Lambda1 * Lambda2 joining two maximal orders
FullLattice connect_orders(const OrderHandle& o1, const OrderHandle& o2);

// X |-> M^{-1} X M along connect_orders(o1, o2); two-sided ideals of o1 map
// to two-sided ideals of o2, independently of the connecting ideal
FullLattice phi_map(const OrderHandle& o1, const OrderHandle& o2, const FullLattice& X);

}  // namespace crystalline
