#include <doctest.h>

#include "xtrss/errors.hpp"
#include "xtrss/gfp6.hpp"
#include "xtrss/rng.hpp"

using namespace xtrss;

namespace {

const PrimePtr p23 = make_prime(23);

// Any irreducible F(c, X) works for plain ring/field arithmetic tests.
Fp2 find_irreducible_c(Rng& rng) {
    for (;;) {
        Fp2 c = Fp2::random(p23, rng);
        if (cubic_irreducible(c)) return c;
    }
}

Fp6 random_elem(const Fp6CtxPtr& ctx, Rng& rng) {
    return Fp6(Fp2::random(ctx->p, rng), Fp2::random(ctx->p, rng),
               Fp2::random(ctx->p, rng), ctx);
}

} // namespace

TEST_CASE("theta powers and reduction by F") {
    Rng rng(23);
    Fp2 c = find_irreducible_c(rng);
    auto ctx = Fp6Ctx::make(c);
    Fp6 theta = Fp6::theta(ctx);
    Fp6 theta2 = theta * theta;
    CHECK(theta2 == Fp6(Fp2::zero(p23), Fp2::zero(p23), Fp2::one(p23), ctx));
    // theta^3 = c theta^2 - c^p theta + 1.
    CHECK(theta2 * theta ==
          Fp6(Fp2::one(p23), -c.frobenius(), c, ctx));
    CHECK(theta * Fp6::one(ctx) == theta);
}

TEST_CASE("pow laws") {
    Rng rng(29);
    Fp2 c = find_irreducible_c(rng);
    auto ctx = Fp6Ctx::make(c);
    Fp6 theta = Fp6::theta(ctx);
    CHECK(theta.pow(0) == Fp6::one(ctx));
    CHECK(theta.pow(1) == theta);
    for (int i = 0; i < 25; ++i) {
        mpz_class a = rng.below(500), b = rng.below(500);
        Fp6 x = random_elem(ctx, rng);
        CHECK(x.pow(a + b) == x.pow(a) * x.pow(b));
    }
}

TEST_CASE("field axioms in GF(p^6)") {
    Rng rng(31);
    auto ctx = Fp6Ctx::make(find_irreducible_c(rng));
    for (int i = 0; i < 1000; ++i) {
        Fp6 a = random_elem(ctx, rng);
        Fp6 b = random_elem(ctx, rng);
        Fp6 c = random_elem(ctx, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("frobenius p^2 has order 3 and fixes GF(p^2) scalars") {
    Rng rng(37);
    auto ctx = Fp6Ctx::make(find_irreducible_c(rng));
    for (int i = 0; i < 100; ++i) {
        Fp6 a = random_elem(ctx, rng);
        Fp6 b = random_elem(ctx, rng);
        CHECK(a.frobenius_p2().frobenius_p2().frobenius_p2() == a);
        CHECK((a * b).frobenius_p2() == a.frobenius_p2() * b.frobenius_p2());
        // Oracle: x^(p^2) by generic exponentiation.
        CHECK(a.frobenius_p2() == a.pow(mpz_class(23) * 23));
    }
    Fp6 scalar = Fp6::from_fp2(Fp2::random(p23, rng), ctx);
    CHECK(scalar.frobenius_p2() == scalar);
}

TEST_CASE("trace") {
    Rng rng(41);
    Fp2 c = find_irreducible_c(rng);
    auto ctx = Fp6Ctx::make(c);
    CHECK(Fp6::one(ctx).trace() == Fp2::from_int(3, p23));
    CHECK(Fp6::theta(ctx).trace() == c);
    for (int i = 0; i < 200; ++i) {
        Fp6 a = random_elem(ctx, rng);
        Fp6 b = random_elem(ctx, rng);
        Fp2 lambda = Fp2::random(p23, rng);
        // Conjugates permute under frobenius.
        CHECK(a.frobenius_p2().trace() == a.trace());
        // GF(p^2)-linearity.
        Fp6 scaled = Fp6::from_fp2(lambda, ctx) * a + b;
        CHECK(scaled.trace() == lambda * a.trace() + b.trace());
    }
}

TEST_CASE("conjugates of theta are exactly the roots of F") {
    Rng rng(43);
    Fp2 c = find_irreducible_c(rng);
    auto ctx = Fp6Ctx::make(c);
    Fp6 cF = Fp6::from_fp2(c, ctx);
    Fp6 cpF = Fp6::from_fp2(c.frobenius(), ctx);
    Fp6 conj = Fp6::theta(ctx);
    for (int i = 0; i < 3; ++i) {
        Fp6 val = conj.pow(3) - cF * conj.pow(2) + cpF * conj - Fp6::one(ctx);
        CHECK(val.is_zero());
        conj = conj.frobenius_p2();
    }
    CHECK(conj == Fp6::theta(ctx)); // back after three steps
}

TEST_CASE("cubic_irreducible agrees with exhaustive root search at p = 23") {
    int irreducible_count = 0;
    for (int z1 = 0; z1 < 23; ++z1) {
        for (int z2 = 0; z2 < 23; ++z2) {
            Fp2 c(z1, z2, p23);
            Fp2 cp = c.frobenius();
            bool has_root = false;
            // F(c, x) over all 529 field elements.
            for (int x1 = 0; x1 < 23 && !has_root; ++x1) {
                for (int x2 = 0; x2 < 23 && !has_root; ++x2) {
                    Fp2 x(x1, x2, p23);
                    Fp2 val = x * x * x - c * x * x + cp * x - Fp2::one(p23);
                    if (val.is_zero()) has_root = true;
                }
            }
            CHECK(cubic_irreducible(c) == !has_root);
            if (!has_root) ++irreducible_count;
        }
    }
    CHECK(irreducible_count > 0);
}

TEST_CASE("c in the base field always gives a reducible F") {
    // F(c, 1) = 1 - c + c^p - 1 = 0 whenever c^p = c.
    for (int t = 0; t < 23; ++t) {
        Fp2 c(t, t, p23);
        CHECK_FALSE(cubic_irreducible(c));
    }
}

TEST_CASE("mismatched contexts rejected") {
    Rng rng(47);
    auto ctx1 = Fp6Ctx::make(find_irreducible_c(rng));
    auto ctx2 = Fp6Ctx::make(find_irreducible_c(rng));
    REQUIRE(ctx1->c != ctx2->c);
    CHECK_THROWS_AS(Fp6::theta(ctx1) * Fp6::theta(ctx2), ParamError);
}

TEST_CASE("serialization round trip") {
    Rng rng(53);
    auto ctx = Fp6Ctx::make(find_irreducible_c(rng));
    for (int i = 0; i < 50; ++i) {
        Fp6 a = random_elem(ctx, rng);
        CHECK(Fp6::parse(a.str(), ctx) == a);
    }
    CHECK_THROWS_AS(Fp6::parse("1,2,3,4,5", ctx), FormatError);
    CHECK_THROWS_AS(Fp6::parse("1,2,3,4,5,6,7", ctx), FormatError);
}
