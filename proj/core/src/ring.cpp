#include "crystalline/ring.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace crystalline {

namespace {

const std::array<int, 9> kSupportedD = {-11, -7, -3, -2, -1, 2, 3, 5, 13};

int mod4(int d) { return ((d % 4) + 4) % 4; }

}  // namespace

RingSpec RingSpec::integers() { return {}; }

RingSpec RingSpec::quadratic(int d) {
    if (std::find(kSupportedD.begin(), kSupportedD.end(), d) == kSupportedD.end())
        throw ValidationError("base-ring-supported", -1, -1, -1,
                              "d = " + std::to_string(d) + " is not a supported quadratic ring");
    RingSpec R;
    R.kind = RingKind::Quadratic;
    R.d = d;
    R.half_basis = (mod4(d) == 1);
    R.t = R.half_basis ? 1 : 0;
    R.n = R.half_basis ? (1 - d) / 4 : -d;
    return R;
}

RElem radd(const RElem& x, const RElem& y) { return {x.a + y.a, x.b + y.b}; }
RElem rsub(const RElem& x, const RElem& y) { return {x.a - y.a, x.b - y.b}; }
RElem rneg(const RElem& x) { return {-x.a, -x.b}; }

RElem rmul(const RingSpec& R, const RElem& x, const RElem& y) {
    if (R.kind == RingKind::Integers) return {x.a * y.a, 0};
    // (a1+b1 th)(a2+b2 th), th^2 = t th - n
    BigInt bd = x.b * y.b;
    return {x.a * y.a - R.n * bd, x.a * y.b + x.b * y.a + R.t * bd};
}

RElem rmul_int(const RElem& x, const BigInt& c) { return {x.a * c, x.b * c}; }

RElem rconj(const RingSpec& R, const RElem& x) {
    if (R.kind == RingKind::Integers) return x;
    return {x.a + R.t * x.b, -x.b};
}

BigInt rnorm(const RingSpec& R, const RElem& x) {
    if (R.kind == RingKind::Integers) return x.a;
    return x.a * x.a + R.t * x.a * x.b + R.n * x.b * x.b;
}

BigInt rnorm_abs(const RingSpec& R, const RElem& x) { return abs_int(rnorm(R, x)); }

BigInt rtrace(const RingSpec& R, const RElem& x) {
    if (R.kind == RingKind::Integers) return x.a;
    return 2 * x.a + R.t * x.b;
}

RElem rpow(const RingSpec& R, const RElem& x, unsigned e) {
    RElem r{1, 0}, b = x;
    while (e) {
        if (e & 1u) r = rmul(R, r, b);
        b = rmul(R, b, b);
        e >>= 1u;
    }
    return r;
}

bool is_unit(const RingSpec& R, const RElem& x) { return rnorm_abs(R, x) == 1; }

std::vector<RElem> unit_group(const RingSpec& R) {
    if (R.is_real()) throw std::logic_error("unit_group: infinite unit group");
    if (R.kind == RingKind::Integers || (R.d != -1 && R.d != -3))
        return {{1, 0}, {-1, 0}};
    if (R.d == -1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    // d = -3: theta is a primitive 6th root of unity
    std::vector<RElem> us;
    RElem u{1, 0};
    for (int i = 0; i < 6; ++i) {
        us.push_back(u);
        u = rmul(R, u, {0, 1});
    }
    return us;
}

RElem fundamental_unit(const RingSpec& R) {
    switch (R.d) {
        case 2: return {1, 1};   // 1 + sqrt(2)
        case 3: return {2, 1};   // 2 + sqrt(3)
        case 5: return {0, 1};   // (1+sqrt(5))/2
        case 13: return {1, 1};  // (3+sqrt(13))/2
        default: throw std::logic_error("fundamental_unit: not a real quadratic ring");
    }
}

namespace {

// round num/den to the nearest integer, ties toward -inf
BigInt round_half_down(const BigInt& num, const BigInt& den) {
    // ceil(v - 1/2) = -floor((den - 2 num) / (2 den))
    return -floor_div(den - 2 * num, 2 * den);
}

}  // namespace

DivResult euclid_divmod(const RingSpec& R, const RElem& x, const RElem& y) {
    if (y.is_zero()) throw DivByZeroError();
    // exact coordinates of x/y over Q
    BigInt den;
    RElem num;
    if (R.kind == RingKind::Integers) {
        num = x;
        den = y.a;
    } else {
        num = rmul(R, x, rconj(R, y));
        den = rnorm(R, y);
    }
    const BigInt ny = rnorm_abs(R, y);

    BigInt qa0 = round_half_down(num.a, den);
    BigInt qb0 = R.kind == RingKind::Integers ? BigInt(0) : round_half_down(num.b, den);
    BigInt fa = floor_div(num.a, den);
    BigInt fb = R.kind == RingKind::Integers ? BigInt(0) : floor_div(num.b, den);

    std::vector<RElem> cands;
    cands.push_back({qa0, qb0});
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= (R.kind == RingKind::Integers ? 0 : 1); ++j) {
            RElem c{fa + i, fb + j};
            if (!(c == cands.front())) cands.push_back(c);
        }
    std::sort(cands.begin() + 1, cands.end(),
              [](const RElem& u, const RElem& v) { return relem_cmp(u, v) < 0; });

    const RElem* best = nullptr;
    BigInt best_norm;
    for (const RElem& q : cands) {
        BigInt nr = rnorm_abs(R, rsub(x, rmul(R, q, y)));
        if (best == nullptr || nr < best_norm) {
            best = &q;
            best_norm = nr;
        }
    }
    if (best_norm >= ny)
        throw std::logic_error("euclid_divmod: no candidate quotient meets the norm bound");
    return {*best, rsub(x, rmul(R, *best, y))};
}

bool divides(const RingSpec& R, const RElem& d, const RElem& x) {
    if (d.is_zero()) return x.is_zero();
    if (R.kind == RingKind::Integers) return x.a % d.a == 0;
    RElem num = rmul(R, x, rconj(R, d));
    BigInt nd = rnorm(R, d);
    return num.a % nd == 0 && num.b % nd == 0;
}

RElem exact_div(const RingSpec& R, const RElem& x, const RElem& d) {
    if (d.is_zero()) throw DivByZeroError();
    if (R.kind == RingKind::Integers) return {exact_div(x.a, d.a), 0};
    RElem num = rmul(R, x, rconj(R, d));
    BigInt nd = rnorm(R, d);
    return {exact_div(num.a, nd), exact_div(num.b, nd)};
}

RElem rgcd(const RingSpec& R, const RElem& x, const RElem& y) {
    RElem u = x, v = y;
    while (!v.is_zero()) {
        DivResult d = euclid_divmod(R, u, v);
        u = v;
        v = d.r;
    }
    return canonical_associate(R, u);
}

int sign_phi1(const RingSpec& R, const RElem& x) {
    if (R.kind == RingKind::Integers) return x.a == 0 ? 0 : (x.a > 0 ? 1 : -1);
    if (x.b == 0) return x.a == 0 ? 0 : (x.a > 0 ? 1 : -1);
    // phi1(x) = (A + b sqrt(D)) / 2 with A = 2a + t b, D = t^2 - 4n > 0
    BigInt A = 2 * x.a + R.t * x.b;
    BigInt D = BigInt(R.t) * R.t - 4 * BigInt(R.n);
    int sb = x.b > 0 ? 1 : -1;
    if (A == 0) return sb;
    int sa = A > 0 ? 1 : -1;
    if (sa == sb) return sa;
    BigInt lhs = A * A, rhs = x.b * x.b * D;
    if (lhs == rhs) throw std::logic_error("sign_phi1: vanishing embedding of nonzero element");
    return lhs > rhs ? sa : sb;
}

namespace {

// angle sector of a nonzero element of an imaginary quadratic ring
int angle_sector(const RingSpec& R, const RElem& z) {
    BigInt two_re = 2 * z.a + R.t * z.b;
    if (z.b == 0) return z.a > 0 ? 0 : 4;
    if (z.b > 0) {
        if (two_re > 0) return 1;
        return two_re == 0 ? 2 : 3;
    }
    if (two_re < 0) return 5;
    return two_re == 0 ? 6 : 7;
}

// strict "smaller argument angle, then lexicographic" order
bool angle_less(const RingSpec& R, const RElem& z1, const RElem& z2) {
    int s1 = angle_sector(R, z1), s2 = angle_sector(R, z2);
    if (s1 != s2) return s1 < s2;
    BigInt cross = (2 * z1.a + R.t * z1.b) * z2.b - (2 * z2.a + R.t * z2.b) * z1.b;
    if (cross != 0) return cross > 0;
    return relem_cmp(z1, z2) < 0;
}

}  // namespace

RElem canonical_associate(const RingSpec& R, const RElem& x) {
    if (x.is_zero()) return x;
    if (R.kind == RingKind::Integers) return x.a > 0 ? x : rneg(x);
    if (R.is_imaginary()) {
        RElem best = x;
        for (const RElem& u : unit_group(R)) {
            RElem cand = rmul(R, x, u);
            if (angle_less(R, cand, best)) best = cand;
        }
        return best;
    }
    // real quadratic: unique associate with phi1 > 0 and
    // phi1(z)^2 / |N(z)| in [1, phi1(eps)^2)
    RElem eps = fundamental_unit(R);
    RElem eps_inv = rnorm(R, eps) == 1 ? rconj(R, eps) : rneg(rconj(R, eps));
    BigInt nz = rnorm_abs(R, x);
    RElem z = x;
    auto ratio_low_ok = [&](const RElem& w) {
        return sign_phi1(R, rsub(rmul(R, w, w), RElem(nz))) >= 0;
    };
    auto ratio_high_ok = [&](const RElem& w) {
        RElem bound = rmul_int(rmul(R, eps, eps), nz);
        return sign_phi1(R, rsub(rmul(R, w, w), bound)) < 0;
    };
    while (!ratio_low_ok(z)) z = rmul(R, z, eps);
    while (!ratio_high_ok(z)) z = rmul(R, z, eps_inv);
    if (sign_phi1(R, z) < 0) z = rneg(z);
    return z;
}

BigInt content(const RElem& x) { return gcd_int(abs_int(x.a), abs_int(x.b)); }

KElem knormalize(KElem x) {
    if (x.den == 0) throw std::logic_error("KElem: zero denominator");
    if (x.den < 0) {
        x.den = -x.den;
        x.num = rneg(x.num);
    }
    if (x.num.is_zero()) {
        x.den = 1;
        return x;
    }
    BigInt g = gcd_int(content(x.num), x.den);
    if (g > 1) {
        x.num.a /= g;
        x.num.b /= g;
        x.den /= g;
    }
    return x;
}

KElem kadd(const KElem& x, const KElem& y) {
    return knormalize({radd(rmul_int(x.num, y.den), rmul_int(y.num, x.den)), x.den * y.den});
}

KElem ksub(const KElem& x, const KElem& y) { return kadd(x, kneg(y)); }

KElem kneg(const KElem& x) { return {rneg(x.num), x.den}; }

KElem kmul(const RingSpec& R, const KElem& x, const KElem& y) {
    return knormalize({rmul(R, x.num, y.num), x.den * y.den});
}

KElem kinv(const RingSpec& R, const KElem& x) {
    if (x.is_zero()) throw DivByZeroError("inverse of zero");
    if (R.kind == RingKind::Integers) return knormalize({RElem(x.den), x.num.a});
    return knormalize({rmul_int(rconj(R, x.num), x.den), rnorm(R, x.num)});
}

KElem kdiv(const RingSpec& R, const KElem& x, const KElem& y) { return kmul(R, x, kinv(R, y)); }

KElem kconj(const RingSpec& R, const KElem& x) { return {rconj(R, x.num), x.den}; }

KElem kfrom(const RElem& x) { return {x, 1}; }
KElem kfrom_int(const BigInt& a) { return {RElem(a), 1}; }

bool kis_integral(const KElem& x) { return x.den == 1; }

FracIdeal make_frac_ideal(const RingSpec& R, const KElem& gen) {
    KElem g = knormalize(gen);
    g.num = canonical_associate(R, g.num);
    return {g};
}

FracIdeal fi_one(const RingSpec& R) { return make_frac_ideal(R, kfrom_int(1)); }

FracIdeal fi_mul(const RingSpec& R, const FracIdeal& I, const FracIdeal& J) {
    return make_frac_ideal(R, kmul(R, I.gen, J.gen));
}

FracIdeal fi_inv(const RingSpec& R, const FracIdeal& I) {
    if (I.is_zero()) throw ZeroIdealError("inverse of the zero ideal");
    return make_frac_ideal(R, kinv(R, I.gen));
}

FracIdeal fi_add(const RingSpec& R, const FracIdeal& I, const FracIdeal& J) {
    if (I.is_zero()) return J;
    if (J.is_zero()) return I;
    RElem g = rgcd(R, rmul_int(I.gen.num, J.gen.den), rmul_int(J.gen.num, I.gen.den));
    return make_frac_ideal(R, KElem(g, I.gen.den * J.gen.den));
}

FracIdeal fi_intersect(const RingSpec& R, const FracIdeal& I, const FracIdeal& J) {
    if (I.is_zero() || J.is_zero()) return {KElem(RElem(0), 1)};
    return fi_inv(R, fi_add(R, fi_inv(R, I), fi_inv(R, J)));
}

bool fi_contains(const RingSpec& R, const FracIdeal& I, const FracIdeal& J) {
    if (J.is_zero()) return true;
    if (I.is_zero()) return false;
    return kis_integral(kdiv(R, J.gen, I.gen));
}

bool fi_is_integral(const RingSpec& R, const FracIdeal& I) {
    return fi_contains(R, fi_one(R), I);
}

FracIdeal fi_sigma(const RingSpec& R, const SigmaAction& s, const FracIdeal& I) {
    return make_frac_ideal(R, s.apply(R, I.gen));
}

long relem_valuation(const RingSpec& R, const RElem& x, const RElem& pi) {
    if (x.is_zero()) throw ZeroIdealError("valuation of zero");
    long v = 0;
    RElem y = x;
    while (divides(R, pi, y)) {
        y = exact_div(R, y, pi);
        ++v;
    }
    return v;
}

long valuation_at(const RingSpec& R, const FracIdeal& I, const RElem& pi) {
    if (I.is_zero()) throw ZeroIdealError("valuation of the zero ideal");
    return relem_valuation(R, I.gen.num, pi) - relem_valuation(R, RElem(I.gen.den), pi);
}

namespace {

BigInt legendre(const BigInt& a, const BigInt& p) {
    BigInt r = mod_pow(a, (p - 1) / 2, p);
    return r == p - 1 ? BigInt(-1) : r;
}

// Tonelli-Shanks, p odd prime, a a quadratic residue
BigInt sqrt_mod(const BigInt& a0, const BigInt& p) {
    BigInt a = mod_norm(a0, p);
    if (a == 0) return 0;
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    BigInt q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    BigInt z = 2;
    while (legendre(z, p) != -1) ++z;
    BigInt m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        BigInt i = 0, tt = t;
        while (tt != 1) { tt = mod_mul(tt, tt, p); ++i; }
        BigInt b = mod_pow(c, pow_int(2, (unsigned)(m - i - 1).convert_to<unsigned long>()), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    return r;
}

}  // namespace

std::vector<RationalPrimeFactor> factor_rational_prime(const RingSpec& R, const BigInt& p) {
    if (!is_prime(p)) throw NotPrimeError("factor_rational_prime: " + p.str() + " is not prime");
    if (R.kind == RingKind::Integers) return {{RElem(p), 1, 1}};

    auto prime_gcd = [&](const BigInt& root) {
        return rgcd(R, RElem(p), RElem(-root, 1));  // gcd(p, theta - root)
    };

    std::vector<BigInt> roots;
    bool ramified = false;
    if (p == 2) {
        for (int r = 0; r <= 1; ++r)
            if (mod_norm(BigInt(r * r - R.t * r + R.n), 2) == 0) roots.push_back(r);
        ramified = roots.size() == 1;
    } else {
        BigInt D = BigInt(R.t) * R.t - 4 * BigInt(R.n);
        BigInt Dm = mod_norm(D, p);
        if (Dm == 0) {
            roots.push_back(mod_mul(R.t, mod_inv(2, p), p));
            ramified = true;
        } else if (legendre(Dm, p) == 1) {
            BigInt s = sqrt_mod(Dm, p);
            BigInt half = mod_inv(2, p);
            roots.push_back(mod_mul(R.t + s, half, p));
            roots.push_back(mod_mul(mod_norm(R.t - s, p), half, p));
        }
    }

    if (roots.empty()) return {{canonical_associate(R, RElem(p)), 1, 2}};  // inert
    if (ramified) return {{prime_gcd(roots[0]), 2, 1}};
    RationalPrimeFactor f1{prime_gcd(roots[0]), 1, 1};
    RationalPrimeFactor f2{prime_gcd(roots[1]), 1, 1};
    if (relem_cmp(f2.prime, f1.prime) < 0) std::swap(f1, f2);
    return {f1, f2};
}

std::string relem_to_string(const RingSpec& R, const RElem& x) {
    std::ostringstream os;
    if (x.b == 0 || R.kind == RingKind::Integers) {
        os << x.a;
        return os.str();
    }
    if (x.a != 0) os << x.a;
    if (x.b > 0 && x.a != 0) os << "+";
    if (x.b == -1) os << "-";
    else if (x.b != 1) os << x.b << "*";
    os << "T";
    if (x.b == 1 || x.b == -1) return os.str();
    return os.str();
}

std::string kelem_to_string(const RingSpec& R, const KElem& x) {
    std::string num = relem_to_string(R, x.num);
    if (x.den == 1) return num;
    bool compound = x.num.b != 0 && x.num.a != 0;
    std::string body = compound ? "(" + num + ")" : num;
    // a bare b*T numerator still needs parentheses so "/q" binds to the term
    if (!compound && x.num.b != 0) body = "(" + num + ")";
    return body + "/" + x.den.str();
}

int relem_cmp(const RElem& x, const RElem& y) {
    if (x.a != y.a) return x.a < y.a ? -1 : 1;
    if (x.b != y.b) return x.b < y.b ? -1 : 1;
    return 0;
}

int kelem_cmp(const KElem& x, const KElem& y) {
    if (x.den != y.den) return x.den < y.den ? -1 : 1;
    return relem_cmp(x.num, y.num);
}

}  // namespace crystalline
