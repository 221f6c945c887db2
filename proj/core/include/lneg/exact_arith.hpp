#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace lneg {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// "p/q", or "p" when q = 1
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
Rational parse_rational(const std::string& text);

// B_1 = -1/2
const Rational& bernoulli_number(unsigned n);
const Integer& euler_number(unsigned n);

Integer binomial(unsigned n, unsigned k);
// C(x, k) for rational x
Rational binomial(const Rational& x, unsigned k);

Integer factorial(unsigned n);
Integer ipow(const Integer& base, unsigned e);
Rational rpow(const Rational& base, int e);

inline Integer to_integer(std::int64_t v) {
    Integer z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}
inline Integer to_integer_u(std::uint64_t v) {
    Integer z;
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(v));
    return z;
}
bool fits_u64(const Integer& z);
bool fits_i64(const Integer& z);
std::uint64_t to_u64(const Integer& z);
std::int64_t to_i64(const Integer& z);

Integer lcm_of_denominators(const std::vector<Rational>& xs);

}  // namespace lneg
