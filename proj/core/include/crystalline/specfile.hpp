#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crystalline/graded.hpp"

namespace crystalline {

// Parsed form of a ring description file.
//
// INI-like sections; '#' starts a comment.  Ring literals are "a+b*T" over
// the generator T of the base ring; field literals allow "p/q" and
// "(a+b*T)/q".
//
//   [ring]            kind = rational-integers | quadratic ; d = <int>
//   [group]           n = <int> ; one "row = i0, i1, ..." per group element
//   [action]          map = id|conj, ...
//   [alpha]           one "row = <relem>, ..." per group element
//   [lattice NAME]    one "gen = <kelem>, ..." per generator
//   [graded NAME]     comps = <kelem>, ...
struct SpecFile {
    RingSpec ring;
    GroupTable group;
    std::vector<SigmaAction> action;
    RMat alpha;
    std::vector<std::pair<std::string, std::vector<KRow>>> lattices;
    std::vector<std::pair<std::string, KRow>> graded;
};

struct ParsedSpec {
    SpecFile file;
    RingPtr ring;
    std::vector<std::pair<std::string, FullLattice>> lattices;
    std::vector<std::pair<std::string, GradedLattice>> graded;

    const FullLattice& lattice(const std::string& name) const;
    const GradedLattice& graded_lattice(const std::string& name) const;
};

SpecFile parse_spec(const std::string& text);           // throws ParseError
ParsedSpec instantiate_spec(const SpecFile& file);      // throws ValidationError etc.
std::string print_spec(const SpecFile& file);           // parse(print(f)) == f

KElem parse_kelem(const RingSpec& R, const std::string& text);  // standalone literal

}  // namespace crystalline
