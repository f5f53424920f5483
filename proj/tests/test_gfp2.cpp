#include <doctest.h>

#include "xtrss/errors.hpp"
#include "xtrss/gfp2.hpp"
#include "xtrss/numtheory.hpp"
#include "xtrss/rng.hpp"

using namespace xtrss;

namespace {
const PrimePtr p23 = make_prime(23);
}

TEST_CASE("basis products") {
    Fp2 alpha(1, 0, p23);
    Fp2 alpha2(0, 1, p23);
    CHECK(alpha * alpha == alpha2);          // alpha * alpha = alpha^2
    CHECK(Fp2(1, 1, p23) * Fp2(1, 1, p23) == Fp2::one(p23)); // (alpha+alpha^2)^2 = 1
    CHECK(Fp2::one(p23) == Fp2(22, 22, p23));
}

TEST_CASE("unit is neutral") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Fp2 a = Fp2::random(p23, rng);
        CHECK(a * Fp2::one(p23) == a);
    }
}

TEST_CASE("frobenius is the coordinate swap and an order-2 automorphism") {
    CHECK(Fp2(3, 7, p23).frobenius() == Fp2(7, 3, p23));
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Fp2 a = Fp2::random(p23, rng);
        Fp2 b = Fp2::random(p23, rng);
        CHECK(a.frobenius().frobenius() == a);
        CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
}

TEST_CASE("inverse") {
    CHECK(Fp2::one(p23).inverse() == Fp2::one(p23));
    CHECK_THROWS_AS(Fp2::zero(p23).inverse(), MathError);
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Fp2 a = Fp2::random(p23, rng);
        if (a.is_zero()) continue;
        CHECK(a * a.inverse() == Fp2::one(p23));
        CHECK(a.inverse().inverse() == a);
    }
}

TEST_CASE("field axioms on random triples, toy and 64-bit prime") {
    // 64-bit class prime with p = 2 (mod 3).
    mpz_class big("18446744073709551629");
    CHECK(is_prime(big));
    CHECK(mod(big, 3) == 2);
    for (const PrimePtr& p : {p23, make_prime(big)}) {
        Rng rng(17);
        for (int i = 0; i < 1000; ++i) {
            Fp2 a = Fp2::random(p, rng);
            Fp2 b = Fp2::random(p, rng);
            Fp2 c = Fp2::random(p, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            CHECK(a - a == Fp2::zero(p));
            CHECK(a.square() == a * a);
        }
    }
}

TEST_CASE("mismatched moduli rejected") {
    Fp2 a(1, 2, p23);
    Fp2 b(1, 2, make_prime(29));
    CHECK_THROWS_AS(a * b, ParamError);
    CHECK_THROWS_AS(a + b, ParamError);
}

TEST_CASE("integer embedding") {
    Fp2 three = Fp2::from_int(3, p23);
    CHECK(three == Fp2(20, 20, p23));
    CHECK(three.in_base_field());
    CHECK(Fp2::from_int(5, p23) * Fp2::from_int(7, p23) ==
          Fp2::from_int(35, p23));
}

TEST_CASE("serialization round trip") {
    Rng rng(19);
    for (int i = 0; i < 50; ++i) {
        Fp2 a = Fp2::random(p23, rng);
        CHECK(Fp2::parse(a.str(), p23) == a);
    }
    CHECK(Fp2(3, 7, p23).str() == "3,7");
    CHECK_THROWS_AS(Fp2::parse("3", p23), FormatError);
    CHECK_THROWS_AS(Fp2::parse("3,99", p23), FormatError);
    CHECK_THROWS_AS(Fp2::parse("x,1", p23), FormatError);
}
