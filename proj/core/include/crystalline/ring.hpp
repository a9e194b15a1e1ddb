#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crystalline/errors.hpp"
#include "crystalline/numeric.hpp"

namespace crystalline {

enum class RingKind { Integers, Quadratic };

// Base ring R: either the rational integers or the ring of integers of a
// norm-euclidean quadratic field Q(sqrt(d)).  Generated over Z by theta with
// theta^2 = t*theta - n; theta = (1+sqrt(d))/2 when d = 1 mod 4, sqrt(d)
// otherwise.
struct RingSpec {
    RingKind kind = RingKind::Integers;
    int d = 0;
    bool half_basis = false;
    int t = 0;  // trace of theta
    int n = 0;  // norm of theta

    static RingSpec integers();
    static RingSpec quadratic(int d);

    int degree() const { return kind == RingKind::Quadratic ? 2 : 1; }
    bool is_real() const { return kind == RingKind::Quadratic && d > 0; }
    bool is_imaginary() const { return kind == RingKind::Quadratic && d < 0; }

    bool operator==(const RingSpec& o) const = default;
};

// Element a + b*theta of R (b = 0 over the integers).
struct RElem {
    BigInt a = 0;
    BigInt b = 0;

    RElem() = default;
    RElem(BigInt a_) : a(std::move(a_)) {}
    RElem(BigInt a_, BigInt b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const RElem& o) const = default;
};

RElem radd(const RElem& x, const RElem& y);
RElem rsub(const RElem& x, const RElem& y);
RElem rneg(const RElem& x);
RElem rmul(const RingSpec& R, const RElem& x, const RElem& y);
RElem rmul_int(const RElem& x, const BigInt& c);
RElem rconj(const RingSpec& R, const RElem& x);  // a + b*(t - theta)
BigInt rnorm(const RingSpec& R, const RElem& x);       // signed field norm
BigInt rnorm_abs(const RingSpec& R, const RElem& x);   // |N(x)|
BigInt rtrace(const RingSpec& R, const RElem& x);
RElem rpow(const RingSpec& R, const RElem& x, unsigned e);

bool is_unit(const RingSpec& R, const RElem& x);
std::vector<RElem> unit_group(const RingSpec& R);  // finite case only
RElem fundamental_unit(const RingSpec& R);         // real quadratic case

// Euclidean division: x = q*y + r with |N(r)| < |N(y)|.  The quotient is the
// coordinatewise nearest integer point (ties toward -inf); when that point
// misses the norm bound the best of the four floor/ceil candidates is taken.
struct DivResult {
    RElem q, r;
};
DivResult euclid_divmod(const RingSpec& R, const RElem& x, const RElem& y);

bool divides(const RingSpec& R, const RElem& d, const RElem& x);
RElem exact_div(const RingSpec& R, const RElem& x, const RElem& d);
RElem rgcd(const RingSpec& R, const RElem& x, const RElem& y);  // canonical associate

// Canonical associate: the unique representative of {unit * x}.  Positive
// over Z; minimal argument angle for imaginary quadratic rings; fundamental
// domain of the unit action (phi1(x)^2 / |N(x)| in [1, phi1(eps)^2), phi1 > 0)
// for real quadratic rings.
RElem canonical_associate(const RingSpec& R, const RElem& x);

// sign of the image of x under the embedding sending theta to its larger root
int sign_phi1(const RingSpec& R, const RElem& x);

BigInt content(const RElem& x);  // gcd of the integer coordinates

// Element num/den of K = Q(R); den > 0 and gcd(content(num), den) = 1.
struct KElem {
    RElem num;
    BigInt den = 1;

    KElem() = default;
    KElem(RElem n_, BigInt d_ = 1) : num(std::move(n_)), den(std::move(d_)) {}

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const KElem& o) const = default;
};

KElem knormalize(KElem x);
KElem kadd(const KElem& x, const KElem& y);
KElem ksub(const KElem& x, const KElem& y);
KElem kneg(const KElem& x);
KElem kmul(const RingSpec& R, const KElem& x, const KElem& y);
KElem kinv(const RingSpec& R, const KElem& x);
KElem kdiv(const RingSpec& R, const KElem& x, const KElem& y);
KElem kconj(const RingSpec& R, const KElem& x);
KElem kfrom(const RElem& x);
KElem kfrom_int(const BigInt& a);
bool kis_integral(const KElem& x);  // den == 1 after normalization

// The automorphism of R used by a group element: identity or conjugation.
struct SigmaAction {
    bool conjugates = false;

    RElem apply(const RingSpec& R, const RElem& x) const { return conjugates ? rconj(R, x) : x; }
    KElem apply(const RingSpec& R, const KElem& x) const {
        return conjugates ? kconj(R, x) : x;
    }
    SigmaAction compose(const SigmaAction& o) const { return {conjugates != o.conjugates}; }
    bool operator==(const SigmaAction& o) const = default;
};

// Principal fractional ideal of R, stored by its canonical generator.
struct FracIdeal {
    KElem gen;  // canonical associate, zero only for the zero ideal

    bool is_zero() const { return gen.is_zero(); }
    bool operator==(const FracIdeal& o) const = default;
};

FracIdeal make_frac_ideal(const RingSpec& R, const KElem& gen);
FracIdeal fi_one(const RingSpec& R);
FracIdeal fi_mul(const RingSpec& R, const FracIdeal& I, const FracIdeal& J);
FracIdeal fi_inv(const RingSpec& R, const FracIdeal& I);
FracIdeal fi_add(const RingSpec& R, const FracIdeal& I, const FracIdeal& J);        // gcd
FracIdeal fi_intersect(const RingSpec& R, const FracIdeal& I, const FracIdeal& J);  // lcm
bool fi_contains(const RingSpec& R, const FracIdeal& I, const FracIdeal& J);  // J subset of I
bool fi_is_integral(const RingSpec& R, const FracIdeal& I);
FracIdeal fi_sigma(const RingSpec& R, const SigmaAction& s, const FracIdeal& I);

// exponent of the prime pi of R in the generator of I (I nonzero)
long valuation_at(const RingSpec& R, const FracIdeal& I, const RElem& pi);
long relem_valuation(const RingSpec& R, const RElem& x, const RElem& pi);

// Factorization of p*R into primes of R: split, inert or ramified.
struct RationalPrimeFactor {
    RElem prime;         // canonical associate
    int exponent;        // 1, or 2 when ramified
    int residue_degree;  // 1 or 2
};
std::vector<RationalPrimeFactor> factor_rational_prime(const RingSpec& R, const BigInt& p);

std::string relem_to_string(const RingSpec& R, const RElem& x);
std::string kelem_to_string(const RingSpec& R, const KElem& x);

// total order used for deterministic output (not compatible with arithmetic)
int relem_cmp(const RElem& x, const RElem& y);
int kelem_cmp(const KElem& x, const KElem& y);

}  // namespace crystalline
