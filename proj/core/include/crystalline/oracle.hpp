#pragma once

#include "crystalline/orders.hpp"

namespace crystalline {
namespace oracle {

struct EnumBudget {
    long max_index = 4;
    unsigned long max_candidates = 100000;
};

// every lattice strictly containing M with index <= max_index that is closed
// under both R-actions; complete up to the bound
std::vector<FullLattice> enumerate_superlattices(const FullLattice& M, const EnumBudget& budget);

// every R-closed lattice strictly inside M with index <= max_index
std::vector<FullLattice> enumerate_sublattices(const FullLattice& M, const EnumBudget& budget);

// all two-sided ideals of order/p*order, lifted to lattices between p*order
// and order (the zero ideal lifts to p*order, the unit ideal to order)
std::vector<FullLattice> enumerate_two_sided_ideals_mod_p(const FullLattice& order, const BigInt& p,
                                                          const EnumBudget& budget);

// true when no enumerated superlattice is an order
bool certify_maximal(const FullLattice& order, const EnumBudget& budget);

// proper left ideals of the maximal order by descending-chain search,
// complete for index <= max_index, sorted by (index, canonical basis)
std::vector<FullLattice> enumerate_left_ideals(const OrderHandle& order, const BigInt& max_index,
                                               const EnumBudget& budget);

// composition length of order/M as a left module; requires the quotient to
// have prime exponent
unsigned module_length(const OrderHandle& order, const FullLattice& M, const EnumBudget& budget);

}  // namespace oracle
}  // namespace crystalline
