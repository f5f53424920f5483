#ifndef XTRSS_GFP2_HPP
#define XTRSS_GFP2_HPP

#include <memory>
#include <string>

#include <gmpxx.h>

#include "xtrss/rng.hpp"

namespace xtrss {

using PrimePtr = std::shared_ptr<const mpz_class>;

PrimePtr make_prime(mpz_class p);

// Element of GF(p^2) for p = 2 (mod 3), written on the basis {alpha, alpha^2}
// where alpha is a primitive cube root of unity (alpha^2 + alpha + 1 = 0).
// On this basis the Frobenius map x -> x^p is the coordinate swap, and the
// integer t embeds as (-t, -t) since 1 = -alpha - alpha^2.
//
// Elements are immutable values; the modulus travels with the element and
// mixed-modulus arithmetic throws ParamError.
class Fp2 {
public:
    Fp2() = default; // detached element; any arithmetic on it throws

    Fp2(mpz_class z1, mpz_class z2, PrimePtr p);

    static Fp2 zero(const PrimePtr& p);
    static Fp2 one(const PrimePtr& p);
    static Fp2 from_int(const mpz_class& t, const PrimePtr& p);
    static Fp2 random(const PrimePtr& p, Rng& rng);

    const mpz_class& z1() const { return z1_; }
    const mpz_class& z2() const { return z2_; }
    const PrimePtr& prime() const { return p_; }

    bool is_zero() const { return z1_ == 0 && z2_ == 0; }
    // True when the element lies in the base field GF(p).
    bool in_base_field() const { return z1_ == z2_; }

    Fp2 operator+(const Fp2& o) const;
    Fp2 operator-(const Fp2& o) const;
    Fp2 operator-() const;
    Fp2 operator*(const Fp2& o) const;
    Fp2 square() const;

    // x -> x^p: free on this basis.
    Fp2 frobenius() const { return Fp2(z2_, z1_, p_, unchecked_tag{}); }

    // x * x^p = z1^2 + z2^2 - z1*z2 as an integer in [0, p).
    mpz_class norm() const;

    Fp2 inverse() const;

    bool operator==(const Fp2& o) const;
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    // Canonical form "z1,z2" in decimal.
    std::string str() const;
    static Fp2 parse(const std::string& text, const PrimePtr& p);

private:
    struct unchecked_tag {};
    Fp2(mpz_class z1, mpz_class z2, PrimePtr p, unchecked_tag)
        : p_(std::move(p)), z1_(std::move(z1)), z2_(std::move(z2)) {}

    void require_context() const;
    void require_same(const Fp2& o) const;

    PrimePtr p_;
    mpz_class z1_, z2_;
};

} // namespace xtrss

#endif
