#ifndef XTRSS_NUMTHEORY_HPP
#define XTRSS_NUMTHEORY_HPP

#include <vector>

#include <gmpxx.h>

namespace xtrss {

// a mod m, result always in [0, m). mpz_class's % truncates toward zero,
// which is the wrong convention for field arithmetic.
mpz_class mod(const mpz_class& a, const mpz_class& m);

// Inverse of a mod m; throws MathError when gcd(a, m) != 1.
mpz_class invmod(const mpz_class& a, const mpz_class& m);

// Deterministic trial division below 2^48, 64-round Miller-Rabin above.
bool is_prime(const mpz_class& n);

// Prime factorization by trial division; intended for the small-lambda
// parameter path where n < 2^48. Returns ascending distinct primes.
std::vector<mpz_class> factor_small(mpz_class n);

// Square root mod an odd prime p via Tonelli-Shanks; throws MathError when
// a is a non-residue.
mpz_class sqrt_mod(const mpz_class& a, const mpz_class& p);

// Exact binomial coefficient C(k, j), 0 <= j <= k.
mpz_class binomial(int k, int j);

// (-1)^n as an element of GF(q): 1 for even n, q-1 for odd n.
mpz_class sign_of(long n, const mpz_class& q);

} // namespace xtrss

#endif
