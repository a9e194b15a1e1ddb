#include "crystalline/numeric.hpp"

#include <map>
#include <stdexcept>

namespace crystalline {

BigInt gcd_int(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

BigInt lcm_int(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::logic_error("floor_div: zero denominator");
    BigInt q = num / den;
    BigInt r = num - q * den;
    if (r != 0 && ((r < 0) != (den < 0))) q -= 1;
    return q;
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::logic_error("exact_div: zero denominator");
    BigInt q = num / den;
    if (q * den != num) throw std::logic_error("exact_div: not divisible");
    return q;
}

BigInt pow_int(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

BigInt mod_norm(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += abs_int(m);
    return r;
}

BigInt mod_mul(const BigInt& a, const BigInt& b, const BigInt& m) {
    return mod_norm(a * b, m);
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
    BigInt r = 1, b = mod_norm(base, m), e = exp;
    while (e > 0) {
        if ((e & 1) != 0) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        e >>= 1;
    }
    return r;
}

BigInt mod_inv(const BigInt& a, const BigInt& m) {
    // extended euclid
    BigInt r0 = mod_norm(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::logic_error("mod_inv: not invertible");
    return mod_norm(s0, m);
}

namespace {

bool miller_rabin(const BigInt& n, const BigInt& a) {
    if (n % a == 0) return n == a;
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    BigInt x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mod_mul(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

BigInt pollard_rho(const BigInt& n) {
    // Brent-style cycle with deterministic restarts
    for (BigInt c = 1;; ++c) {
        BigInt x = 2, y = 2, d = 1;
        while (d == 1) {
            x = mod_norm(x * x + c, n);
            y = mod_norm(y * y + c, n);
            y = mod_norm(y * y + c, n);
            d = gcd_int(abs_int(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    BigInt d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // deterministic for n < 3.3e24
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n) {
    if (n == 0) throw std::logic_error("factor_integer: zero");
    BigInt m = abs_int(n);
    std::map<BigInt, unsigned> acc;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (m % p == 0) { acc[p] += 1; m /= p; }
    }
    factor_rec(m, acc);
    return {acc.begin(), acc.end()};
}

}  // namespace crystalline
