#pragma once

#include <map>
#include <string>

#include "crystalline/graded.hpp"
#include "crystalline/orders.hpp"

namespace crystalline {

// Key/value tree rendered with sorted keys; scalar leaves only.  Reports are
// byte-stable across runs and platforms.
struct Doc {
    std::map<std::string, std::string> scalars;
    std::map<std::string, Doc> children;

    void put(const std::string& key, std::string value) { scalars[key] = std::move(value); }
    void put(const std::string& key, const BigInt& value) { scalars[key] = value.str(); }
    void put(const std::string& key, bool value) { scalars[key] = value ? "true" : "false"; }
    void put(const std::string& key, long value) { scalars[key] = std::to_string(value); }
    Doc& child(const std::string& key) { return children[key]; }

    std::string emit() const;
};

Doc doc_of_lattice(const FullLattice& M);
Doc doc_of_graded(const GradedLattice& G);
std::string doc_of_krow(const RingSpec& R, const KRow& row);

}  // namespace crystalline
