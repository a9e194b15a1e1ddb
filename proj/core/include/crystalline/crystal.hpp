#pragma once

#include <memory>
#include <string>
#include <vector>

#include "crystalline/matrix.hpp"
#include "crystalline/ring.hpp"

namespace crystalline {

// Finite group given by its multiplication table; element 0 is the identity.
struct GroupTable {
    int n = 1;
    std::vector<std::vector<int>> mul;  // mul[g][h]
    std::vector<int> inv;               // derived

    int op(int g, int h) const { return mul[g][h]; }
    int inverse(int g) const { return inv[g]; }

    static GroupTable trivial();
    static GroupTable cyclic(int n);
};

struct ValidityReport {
    bool ok = true;
    bool centrally_crystalline = false;
    std::string identity;  // first violated identity, empty when ok
    int g = -1, h = -1, t = -1;
    std::string message;
};

// The ring A = K <>_{sigma,alpha} G: free K-module on symbols u_g with
// u_g * c = sigma_g(c) * u_g and u_g * u_h = alpha(g,h) * u_{gh}.
struct CrystalRing {
    RingSpec ring;
    GroupTable group;
    std::vector<SigmaAction> action;  // per group element
    RMat alpha;                       // n x n, entries in R
    bool centrally_crystalline = false;

    int n() const { return group.n; }
    int flat_dim() const { return group.n * ring.degree(); }
    const SigmaAction& sigma(int g) const { return action[g]; }
    const RElem& alpha_at(int g, int h) const { return alpha[g][h]; }
    bool has_conjugation() const;
    // R^G equals R when no generator conjugates, Z otherwise
    bool invariants_are_integers() const { return ring.kind == RingKind::Integers || has_conjugation(); }
};

using RingPtr = std::shared_ptr<const CrystalRing>;

ValidityReport validate_ring(const RingSpec& R, const GroupTable& G,
                             const std::vector<SigmaAction>& action, const RMat& alpha);

// validated constructor; throws ValidationError naming the first violation
RingPtr make_crystal_ring(const RingSpec& R, const GroupTable& G,
                          const std::vector<SigmaAction>& action, const RMat& alpha);

// Element sum_g a_g u_g with coefficients in K.
struct AElement {
    RingPtr ring;
    KRow coeffs;

    bool is_zero() const;
};

AElement elem_zero(const RingPtr& A);
AElement elem_one(const RingPtr& A);
AElement elem_u(const RingPtr& A, int g);
AElement elem_from_coeffs(const RingPtr& A, KRow coeffs);
AElement elem_add(const AElement& x, const AElement& y);
AElement elem_sub(const AElement& x, const AElement& y);
AElement elem_neg(const AElement& x);
AElement elem_scale(const KElem& k, const AElement& x);  // left multiplication by k
AElement elem_mul(const AElement& x, const AElement& y);
bool elem_eq(const AElement& x, const AElement& y);
std::vector<std::pair<int, AElement>> grade_decompose(const AElement& x);

// Coordinate matrices of the regular actions in the basis {u_g}.
//
// right_mul_matrix(x): coords(y*x) = coords(y) * Rx, honestly K-linear.
// left_mul_matrix(x) must be applied with the sigma twist folded in:
// coords(x*y)_k = sum_h Lx[h][k] * sigma_{k h^{-1}}(y_h); use apply_left.
KMat right_mul_matrix(const AElement& x);
KMat left_mul_matrix(const AElement& x);
KRow apply_left(const RingPtr& A, const KMat& Lx, const KRow& y);
KRow apply_right(const RingPtr& A, const KMat& Rx, const KRow& y);

// --- flat (rational) coordinates -------------------------------------------
//
// A is a Q-vector space of dimension flat_dim() with basis
// u_{g0}, theta*u_{g0}, u_{g1}, ...; flat vectors are integer rows plus a
// positive denominator.  Flat matrices act on row vectors from the right.

struct FlatVec {
    RRow v;  // integer entries (RElem with b = 0)
    BigInt den = 1;
};

struct FlatMap {
    RMat mat;
    BigInt den = 1;
};

FlatVec flat_of_elem(const AElement& x);
AElement elem_of_flat(const RingPtr& A, const RRow& v, const BigInt& den);
FlatMap flat_left_mul(const AElement& x);   // v |-> flat(x * elem(v))
FlatMap flat_right_mul(const AElement& x);  // v |-> flat(elem(v) * x)
FlatMap flat_of_kmat(const RingPtr& A, const KMat& T);  // v |-> flat(coords(v) * T)
FlatMap flat_compose(const FlatMap& f, const FlatMap& g);  // apply f, then g

}  // namespace crystalline
