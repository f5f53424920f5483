#ifndef XTRSS_GFP6_HPP
#define XTRSS_GFP6_HPP

#include <array>
#include <memory>
#include <string>

#include "xtrss/gfp2.hpp"

namespace xtrss {

struct Fp6Ctx;
using Fp6CtxPtr = std::shared_ptr<const Fp6Ctx>;

// GF(p^6) modeled as GF(p^2)[theta] / F(c, theta) with
//   F(c, X) = X^3 - c X^2 + c^p X - 1.
// The context fixes c, so a fresh trace parameter yields a fresh field
// model. When F is irreducible, theta is a root of F, i.e. the group
// generator itself once c is the trace of that generator.
struct Fp6Ctx {
    PrimePtr p;
    Fp2 c;  // defining coefficient, c = Tr(theta) when F is irreducible
    Fp2 cp; // c^p

    // Reduction rows: theta^3 and theta^4 on the basis {1, theta, theta^2}.
    std::array<Fp2, 3> t3, t4;

    // Conjugation tables: theta^(p^2), theta^(2p^2), theta^(p^4),
    // theta^(2p^4), each reduced mod F. Computed once by square-and-multiply
    // so trace and conjugate checks cost a handful of multiplications.
    std::array<Fp2, 3> fr1, fr1sq, fr2, fr2sq;

    static Fp6CtxPtr make(const Fp2& c);

    bool same_as(const Fp6Ctx& o) const;
};

// True iff F(c, X) has no root in GF(p^2); for a cubic over a field this is
// exactly irreducibility. Decided by gcd(X^(p^2) - X, F).
bool cubic_irreducible(const Fp2& c);

class Fp6 {
public:
    Fp6() = default;

    Fp6(Fp2 a0, Fp2 a1, Fp2 a2, Fp6CtxPtr ctx);

    static Fp6 zero(const Fp6CtxPtr& ctx);
    static Fp6 one(const Fp6CtxPtr& ctx);
    static Fp6 theta(const Fp6CtxPtr& ctx);
    static Fp6 from_fp2(const Fp2& a0, const Fp6CtxPtr& ctx);

    const Fp2& a0() const { return a0_; }
    const Fp2& a1() const { return a1_; }
    const Fp2& a2() const { return a2_; }
    const Fp6CtxPtr& ctx() const { return ctx_; }

    bool is_zero() const;
    bool is_one() const;

    Fp6 operator+(const Fp6& o) const;
    Fp6 operator-(const Fp6& o) const;
    Fp6 operator*(const Fp6& o) const;
    Fp6 square() const { return *this * *this; }

    // Square-and-multiply; pow(x, 0) = 1.
    Fp6 pow(const mpz_class& n) const;

    // x -> x^(p^2), the Frobenius over GF(p^2).
    Fp6 frobenius_p2() const;

    // Sum of the three GF(p^2)-conjugates. Throws MathError if the sum has a
    // nonzero theta or theta^2 coordinate, which would mean the context does
    // not describe a field.
    Fp2 trace() const;

    bool operator==(const Fp6& o) const;
    bool operator!=(const Fp6& o) const { return !(*this == o); }

    // Canonical form: six decimals "a0.z1,a0.z2,a1.z1,a1.z2,a2.z1,a2.z2".
    std::string str() const;
    static Fp6 parse(const std::string& text, const Fp6CtxPtr& ctx);

private:
    void require_context() const;
    void require_same(const Fp6& o) const;

    Fp6CtxPtr ctx_;
    Fp2 a0_, a1_, a2_;
};

} // namespace xtrss

#endif
