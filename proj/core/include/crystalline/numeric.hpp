#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace crystalline {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt abs_int(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt gcd_int(const BigInt& a, const BigInt& b);
BigInt lcm_int(const BigInt& a, const BigInt& b);

// floor division (quotient rounded toward -inf), denominator must be nonzero
BigInt floor_div(const BigInt& num, const BigInt& den);

// exact division; throws std::logic_error if the division has a remainder
BigInt exact_div(const BigInt& num, const BigInt& den);

BigInt pow_int(const BigInt& base, unsigned exp);

// modular arithmetic with a positive modulus, results normalized to [0, m)
BigInt mod_norm(const BigInt& x, const BigInt& m);
BigInt mod_mul(const BigInt& a, const BigInt& b, const BigInt& m);
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m);
BigInt mod_inv(const BigInt& a, const BigInt& m);

bool is_prime(const BigInt& n);

// prime factorization of |n|, n != 0, as (prime, exponent) sorted by prime
std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n);

}  // namespace crystalline
