#include "crystalline/report.hpp"

#include <sstream>

namespace crystalline {

namespace {

void emit_rec(const Doc& d, int indent, std::ostringstream& os) {
    // one sorted pass over both maps; keys are unique across them
    auto s = d.scalars.begin();
    auto c = d.children.begin();
    std::string pad(indent * 2, ' ');
    while (s != d.scalars.end() || c != d.children.end()) {
        bool take_scalar = c == d.children.end() ||
                           (s != d.scalars.end() && s->first < c->first);
        if (take_scalar) {
            os << pad << s->first << ": " << s->second << "\n";
            ++s;
        } else {
            os << pad << c->first << ":\n";
            emit_rec(c->second, indent + 1, os);
            ++c;
        }
    }
}

}  // namespace

std::string Doc::emit() const {
    std::ostringstream os;
    emit_rec(*this, 0, os);
    return os.str();
}

Doc doc_of_lattice(const FullLattice& M) {
    Doc d;
    d.put("den", M.den);
    Doc& basis = d.child("basis");
    const RingSpec& R = M.ring->ring;
    for (std::size_t i = 0; i < M.rbasis.size(); ++i) {
        std::ostringstream row;
        for (std::size_t j = 0; j < M.rbasis[i].size(); ++j)
            row << (j ? ", " : "") << relem_to_string(R, M.rbasis[i][j]);
        std::ostringstream key;
        key << "row_" << (i < 10 ? "0" : "") << i;
        basis.put(key.str(), row.str());
    }
    return d;
}

Doc doc_of_graded(const GradedLattice& G) {
    Doc d;
    std::ostringstream row;
    for (std::size_t g = 0; g < G.comps.size(); ++g)
        row << (g ? ", " : "") << kelem_to_string(G.ring->ring, G.comps[g].gen);
    d.put("comps", row.str());
    return d;
}

std::string doc_of_krow(const RingSpec& R, const KRow& row) {
    std::ostringstream os;
    for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? ", " : "") << kelem_to_string(R, row[j]);
    return os.str();
}

}  // namespace crystalline
