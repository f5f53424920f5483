#include "xtrss/gfp2.hpp"

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"

namespace xtrss {

PrimePtr make_prime(mpz_class p) {
    if (p <= 3) throw ParamError("modulus must exceed 3");
    return std::make_shared<const mpz_class>(std::move(p));
}

Fp2::Fp2(mpz_class z1, mpz_class z2, PrimePtr p) : p_(std::move(p)) {
    if (!p_) throw ParamError("Fp2: null modulus");
    z1_ = mod(z1, *p_);
    z2_ = mod(z2, *p_);
}

Fp2 Fp2::zero(const PrimePtr& p) { return Fp2(0, 0, p); }

Fp2 Fp2::one(const PrimePtr& p) { return from_int(1, p); }

Fp2 Fp2::from_int(const mpz_class& t, const PrimePtr& p) {
    // t = -t*alpha - t*alpha^2.
    return Fp2(-t, -t, p);
}

Fp2 Fp2::random(const PrimePtr& p, Rng& rng) {
    return Fp2(rng.below(*p), rng.below(*p), p, unchecked_tag{});
}

void Fp2::require_context() const {
    if (!p_) throw ParamError("Fp2: operation on detached element");
}

void Fp2::require_same(const Fp2& o) const {
    require_context();
    o.require_context();
    if (p_ != o.p_ && *p_ != *o.p_)
        throw ParamError("Fp2: mismatched moduli");
}

Fp2 Fp2::operator+(const Fp2& o) const {
    require_same(o);
    mpz_class a = z1_ + o.z1_, b = z2_ + o.z2_;
    if (a >= *p_) a -= *p_;
    if (b >= *p_) b -= *p_;
    return Fp2(std::move(a), std::move(b), p_, unchecked_tag{});
}

Fp2 Fp2::operator-(const Fp2& o) const {
    require_same(o);
    mpz_class a = z1_ - o.z1_, b = z2_ - o.z2_;
    if (a < 0) a += *p_;
    if (b < 0) b += *p_;
    return Fp2(std::move(a), std::move(b), p_, unchecked_tag{});
}

Fp2 Fp2::operator-() const {
    require_context();
    mpz_class a = z1_ == 0 ? mpz_class(0) : *p_ - z1_;
    mpz_class b = z2_ == 0 ? mpz_class(0) : *p_ - z2_;
    return Fp2(std::move(a), std::move(b), p_, unchecked_tag{});
}

Fp2 Fp2::operator*(const Fp2& o) const {
    require_same(o);
    // (x1 a + x2 a^2)(y1 a + y2 a^2)
    //   = x2 y2 a + x1 y1 a^2 + (x1 y2 + x2 y1) * 1,  a^3 = 1, 1 = -a - a^2
    //   = (x2 y2 - x1 y2 - x2 y1) a + (x1 y1 - x1 y2 - x2 y1) a^2.
    // Three base multiplications via the Karatsuba split.
    mpz_class d1 = z1_ * o.z1_;
    mpz_class d2 = z2_ * o.z2_;
    mpz_class cross = (z1_ + z2_) * (o.z1_ + o.z2_) - d1 - d2;
    return Fp2(mod(d2 - cross, *p_), mod(d1 - cross, *p_), p_, unchecked_tag{});
}

Fp2 Fp2::square() const {
    require_context();
    // x^2 = x2(x2 - 2 x1) a + x1(x1 - 2 x2) a^2.
    mpz_class a = z2_ * (z2_ - 2 * z1_);
    mpz_class b = z1_ * (z1_ - 2 * z2_);
    return Fp2(mod(a, *p_), mod(b, *p_), p_, unchecked_tag{});
}

mpz_class Fp2::norm() const {
    require_context();
    return mod(z1_ * z1_ + z2_ * z2_ - z1_ * z2_, *p_);
}

Fp2 Fp2::inverse() const {
    require_context();
    if (is_zero()) throw MathError("Fp2: division by zero");
    // x^-1 = x^p / N(x) with N(x) = x * x^p in GF(p).
    mpz_class ninv = invmod(norm(), *p_);
    return Fp2(mod(z2_ * ninv, *p_), mod(z1_ * ninv, *p_), p_, unchecked_tag{});
}

bool Fp2::operator==(const Fp2& o) const {
    require_same(o);
    return z1_ == o.z1_ && z2_ == o.z2_;
}

std::string Fp2::str() const {
    require_context();
    return z1_.get_str() + "," + z2_.get_str();
}

Fp2 Fp2::parse(const std::string& text, const PrimePtr& p) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw FormatError("Fp2: expected \"z1,z2\"");
    mpz_class a, b;
    if (a.set_str(text.substr(0, comma), 10) != 0 ||
        b.set_str(text.substr(comma + 1), 10) != 0)
        throw FormatError("Fp2: bad decimal coordinate");
    if (a < 0 || b < 0 || a >= *p || b >= *p)
        throw FormatError("Fp2: coordinate out of range");
    return Fp2(std::move(a), std::move(b), p);
}

} // namespace xtrss
