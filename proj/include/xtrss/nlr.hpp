#ifndef XTRSS_NLR_HPP
#define XTRSS_NLR_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace xtrss {

// The two fixed binomial-coefficient recursions over GF(q). Writing
// B(k,j) for the binomial coefficient, a window of k+1 consecutive terms
// satisfies, for every instance index i >= 0:
//   Nlr1: sum_j B(k,j) u_{i+k-j}          = c * (-1)^i * i   (mod q)
//   Nlr2: sum_j (-1)^j B(k,j) u_{i+k-j}   = c * i            (mod q)
// Solutions are polynomial: u_i = p(i) * (-1)^i (Nlr1) or u_i = p(i)
// (Nlr2) for a polynomial p of degree at most k+1.
enum class NlrVariant { Nlr1 = 1, Nlr2 = 2 };

struct NlrSpec {
    NlrVariant variant;
    int k;
    mpz_class q;
    mpz_class c;                  // nonzero recursion constant
    std::vector<mpz_class> init;  // u_0 .. u_{k-1} (dealers draw from GF(q)*)

    NlrSpec(NlrVariant variant, int k, mpz_class q, mpz_class c,
            std::vector<mpz_class> init);
};

struct SubshadowSequence {
    NlrSpec spec;
    std::vector<mpz_class> terms; // u_0 .. u_upto
};

// Coefficients A_0 .. A_{k+1} of the closed-form polynomial.
struct RecoveredPolynomial {
    std::vector<mpz_class> coeffs;
};

using NlrPoint = std::pair<long, mpz_class>; // (index x, raw term u_x)

SubshadowSequence generate(const NlrSpec& spec, long upto);

// Forward recurrence seeded with k consecutive terms u_s .. u_{s+k-1};
// returns u_s .. u_upto.
std::vector<mpz_class> extend_consecutive(NlrVariant variant,
                                          const std::vector<mpz_class>& window,
                                          long s, const mpz_class& c, int k,
                                          const mpz_class& q, long upto);

// Degree-(k+1) polynomial through exactly k+2 points. Raw term values are
// passed in; the Nlr1 sign mapping u -> u * (-1)^x happens here so callers
// cannot get the convention wrong. Both routes below are run and compared
// on every call.
RecoveredPolynomial recover_polynomial(NlrVariant variant,
                                       const std::vector<NlrPoint>& points,
                                       int k, const mpz_class& q);

RecoveredPolynomial recover_polynomial_lagrange(
    NlrVariant variant, const std::vector<NlrPoint>& points, int k,
    const mpz_class& q);

RecoveredPolynomial recover_polynomial_linsolve(
    NlrVariant variant, const std::vector<NlrPoint>& points, int k,
    const mpz_class& q);

// Horner evaluation of the closed form, returning the raw term u_i
// (sign mapping applied for Nlr1).
mpz_class eval_closed_form(NlrVariant variant, const RecoveredPolynomial& poly,
                           long i, const mpz_class& q);

} // namespace xtrss

#endif
