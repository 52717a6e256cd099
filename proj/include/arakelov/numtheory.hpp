#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arakelov {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// log|q| without overflowing doubles on huge numerators/denominators.
double log_abs(const Integer& z);
double log_abs(const Rational& q);

// z / 2^shift as a long double, for values whose magnitude may exceed double range.
long double scaled_to_long_double(const Integer& z, long shift);

bool is_squarefree(long n);
bool is_prime(const Integer& n);
int kronecker(const Integer& a, const Integer& p);

// Trial division plus primality test on the cofactor. Intended for the
// moderate norms that appear in ideal computations, not general factoring.
std::vector<std::pair<Integer, int>> factor_integer(Integer n);

int valuation(Integer n, const Integer& p);

// Square root of a modulo an odd prime p, assuming a is a quadratic residue.
Integer sqrt_mod(const Integer& a, const Integer& p);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace arakelov
