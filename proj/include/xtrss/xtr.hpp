#ifndef XTRSS_XTR_HPP
#define XTRSS_XTR_HPP

#include <string>
#include <vector>

#include "xtrss/gfp6.hpp"
#include "xtrss/rng.hpp"

namespace xtrss {

// Public system parameters. The field context is built over c = Tr(g), so g
// is theta in its own minimal-polynomial representation; loaders may carry
// any g satisfying the invariants below.
//
// Invariants: p = 2 (mod 3), q | p^2 - p + 1, both prime and > 3;
// F(c, X) irreducible; g of order exactly q; Tr(g) = c.
struct XtrParams {
    unsigned lambda = 0;
    mpz_class p, q;
    Fp6CtxPtr field;
    Fp6 g;

    const Fp2& c() const { return field->c; }

    // Cached theta^(p^2) mod F as a group element.
    Fp6 theta_frob() const {
        return Fp6(field->fr1[0], field->fr1[1], field->fr1[2], field);
    }

    // Fixed-base power g^e for 0 <= e; uses the precomputed square table
    // when e fits, falls back to generic square-and-multiply otherwise.
    Fp6 g_pow(const mpz_class& e) const;

    std::vector<Fp6> g_squares; // g^(2^i) for i < bits(q)
    void build_table();
};

struct XtrKeypair {
    mpz_class x; // private, 1 < x < q
    Fp2 y;       // public shadow Tr(g^x)
};

struct ScalarCiphertext {
    Fp2 header;      // Tr(g^b)
    mpz_class body;  // kappa * u mod q
};

// c_n = Tr(g^n) from c = Tr(g) alone, in GF(p^2). Binary ladder on the
// state triple (c_{u-1}, c_u, c_{u+1}) built from the identities
//   c_{2u}   = c_u^2 - 2 c_u^p
//   c_{2u-1} = c_{u-1} c_u - c^p c_u^p + c_{u+1}^p
//   c_{2u+1} = c_{u+1} c_u - c   c_u^p + c_{u-1}^p
// with c_0 = 3 and c_1 = c. The seed may be the trace of any element of
// order dividing p^2 - p + 1, so running the ladder over a public shadow y
// with exponent b yields Tr(g^(b x)).
Fp2 trace_ladder(const Fp2& c, const mpz_class& n);

// Parameter generation. Two strategies share the field-setup tail:
// below the trial-division cutoff, sample p and factor p^2 - p + 1 for q;
// above it, sample q = 1 (mod 3), solve r^2 - r + 1 = 0 (mod q) and search
// primes p = r (mod q) within the lambda-bit window. The attempt bound
// caps candidate draws; exhaustion raises GenerationError and the caller
// retries with a new seed.
XtrParams generate_params(unsigned lambda, Rng& rng,
                          unsigned attempts = 1u << 20);

// Field setup over pinned primes; used directly by tests that need exact
// toy parameters such as p = 23, q = 13.
XtrParams make_params(const mpz_class& p, const mpz_class& q, Rng& rng,
                      unsigned lambda = 0, unsigned attempts = 4096);

// Number of distinct public shadows an XTR group can issue: nonzero
// exponents split into trace orbits {n, n p^2, n p^4} of size three.
inline mpz_class shadow_capacity(const XtrParams& params) {
    return (params.q - 1) / 3;
}

// Checks every XtrParams invariant; throws ParamError on the first failure.
void validate_params(const XtrParams& params);

XtrKeypair keygen(const XtrParams& params, Rng& rng);

// Canonical bridge GF(p^2) -> Z_q: (z1 + z2 * p) mod q. Deterministic and
// public; resolves the type gap between traces and subshadow scalars.
mpz_class encode_to_zq(const Fp2& t, const mpz_class& q);

ScalarCiphertext encrypt_scalar(const XtrParams& params, const Fp2& y,
                                const mpz_class& b, const mpz_class& u);

mpz_class decrypt_scalar(const XtrParams& params, const ScalarCiphertext& ct,
                         const mpz_class& x);

// t != 0 and t^q = 1. Must pass before any exponent arithmetic mod q is
// applied to a published group element.
bool subgroup_check(const XtrParams& params, const Fp6& t);

std::string write_params(const XtrParams& params);
XtrParams read_params(const std::string& text);

} // namespace xtrss

#endif
