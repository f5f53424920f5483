#include "xtrss/gfp6.hpp"

#include <vector>

#include "xtrss/errors.hpp"

namespace xtrss {

namespace {

using Triple = std::array<Fp2, 3>;

// Plain coefficient arithmetic in the ring GF(p^2)[X]/F(c,X). This is
// well-defined whether or not F is irreducible, which is exactly what the
// irreducibility test needs.
struct CubicRing {
    PrimePtr p;
    Fp2 c, cp;
    Triple t3, t4;

    explicit CubicRing(const Fp2& c_in)
        : p(c_in.prime()), c(c_in), cp(c_in.frobenius()) {
        Fp2 one = Fp2::one(p);
        // theta^3 = c theta^2 - c^p theta + 1
        t3 = {one, -cp, c};
        // theta^4 = theta * theta^3
        t4 = {c, one - c * cp, c * c - cp};
    }

    Triple mul(const Triple& a, const Triple& b) const {
        Fp2 d0 = a[0] * b[0];
        Fp2 d1 = a[0] * b[1] + a[1] * b[0];
        Fp2 d2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
        Fp2 d3 = a[1] * b[2] + a[2] * b[1];
        Fp2 d4 = a[2] * b[2];
        return {d0 + d3 * t3[0] + d4 * t4[0],
                d1 + d3 * t3[1] + d4 * t4[1],
                d2 + d3 * t3[2] + d4 * t4[2]};
    }

    Triple pow(const Triple& base, const mpz_class& n) const {
        Triple r = {Fp2::one(p), Fp2::zero(p), Fp2::zero(p)};
        if (n == 0) return r;
        std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
        Triple acc = base;
        for (std::size_t i = nbits - 1; i-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
                acc = mul(acc, base);
        }
        return acc;
    }

    // a0 + a1 * t + a2 * t^2 for a precomputed element t with square tsq.
    Triple substitute(const Triple& a, const Triple& t, const Triple& tsq) const {
        Triple r = {a[0], Fp2::zero(p), Fp2::zero(p)};
        for (int i = 0; i < 3; ++i) {
            r[i] = r[i] + a[1] * t[i] + a[2] * tsq[i];
        }
        return r;
    }
};

// Polynomial gcd over GF(p^2), little-endian coefficients, degrees <= 3.
std::vector<Fp2> poly_trim(std::vector<Fp2> f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

std::vector<Fp2> poly_rem(std::vector<Fp2> r, const std::vector<Fp2>& d) {
    while (r.size() >= d.size()) {
        Fp2 factor = r.back() * d.back().inverse();
        std::size_t shift = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i)
            r[i + shift] = r[i + shift] - factor * d[i];
        r = poly_trim(std::move(r));
        if (r.empty()) break;
    }
    return r;
}

std::size_t poly_gcd_degree(std::vector<Fp2> a, std::vector<Fp2> b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

} // namespace

bool cubic_irreducible(const Fp2& c) {
    CubicRing ring(c);
    const PrimePtr& p = ring.p;
    Triple x = {Fp2::zero(p), Fp2::one(p), Fp2::zero(p)};
    Triple xq = ring.pow(x, (*p) * (*p));
    // gcd(X^(p^2) - X, F): the product of F's distinct linear factors.
    std::vector<Fp2> lhs = {xq[0], xq[1] - Fp2::one(p), xq[2]};
    std::vector<Fp2> f = {-Fp2::one(p), ring.cp, -ring.c, Fp2::one(p)};
    return poly_gcd_degree(std::move(lhs), std::move(f)) == 0;
}

Fp6CtxPtr Fp6Ctx::make(const Fp2& c) {
    CubicRing ring(c);
    auto ctx = std::make_shared<Fp6Ctx>();
    ctx->p = ring.p;
    ctx->c = ring.c;
    ctx->cp = ring.cp;
    ctx->t3 = ring.t3;
    ctx->t4 = ring.t4;
    Triple x = {Fp2::zero(ring.p), Fp2::one(ring.p), Fp2::zero(ring.p)};
    ctx->fr1 = ring.pow(x, (*ring.p) * (*ring.p));
    ctx->fr1sq = ring.mul(ctx->fr1, ctx->fr1);
    ctx->fr2 = ring.substitute(ctx->fr1, ctx->fr1, ctx->fr1sq);
    ctx->fr2sq = ring.mul(ctx->fr2, ctx->fr2);
    return ctx;
}

bool Fp6Ctx::same_as(const Fp6Ctx& o) const {
    if (this == &o) return true;
    return *p == *o.p && c == o.c;
}

Fp6::Fp6(Fp2 a0, Fp2 a1, Fp2 a2, Fp6CtxPtr ctx)
    : ctx_(std::move(ctx)), a0_(std::move(a0)), a1_(std::move(a1)),
      a2_(std::move(a2)) {
    if (!ctx_) throw ParamError("Fp6: null context");
}

Fp6 Fp6::zero(const Fp6CtxPtr& ctx) {
    return Fp6(Fp2::zero(ctx->p), Fp2::zero(ctx->p), Fp2::zero(ctx->p), ctx);
}

Fp6 Fp6::one(const Fp6CtxPtr& ctx) {
    return Fp6(Fp2::one(ctx->p), Fp2::zero(ctx->p), Fp2::zero(ctx->p), ctx);
}

Fp6 Fp6::theta(const Fp6CtxPtr& ctx) {
    return Fp6(Fp2::zero(ctx->p), Fp2::one(ctx->p), Fp2::zero(ctx->p), ctx);
}

Fp6 Fp6::from_fp2(const Fp2& a0, const Fp6CtxPtr& ctx) {
    return Fp6(a0, Fp2::zero(ctx->p), Fp2::zero(ctx->p), ctx);
}

void Fp6::require_context() const {
    if (!ctx_) throw ParamError("Fp6: operation on detached element");
}

void Fp6::require_same(const Fp6& o) const {
    require_context();
    o.require_context();
    if (ctx_ != o.ctx_ && !ctx_->same_as(*o.ctx_))
        throw ParamError("Fp6: mismatched field contexts");
}

bool Fp6::is_zero() const {
    return a0_.is_zero() && a1_.is_zero() && a2_.is_zero();
}

bool Fp6::is_one() const {
    require_context();
    return a1_.is_zero() && a2_.is_zero() && a0_ == Fp2::one(ctx_->p);
}

Fp6 Fp6::operator+(const Fp6& o) const {
    require_same(o);
    return Fp6(a0_ + o.a0_, a1_ + o.a1_, a2_ + o.a2_, ctx_);
}

Fp6 Fp6::operator-(const Fp6& o) const {
    require_same(o);
    return Fp6(a0_ - o.a0_, a1_ - o.a1_, a2_ - o.a2_, ctx_);
}

Fp6 Fp6::operator*(const Fp6& o) const {
    require_same(o);
    Fp2 d0 = a0_ * o.a0_;
    Fp2 d1 = a0_ * o.a1_ + a1_ * o.a0_;
    Fp2 d2 = a0_ * o.a2_ + a1_ * o.a1_ + a2_ * o.a0_;
    Fp2 d3 = a1_ * o.a2_ + a2_ * o.a1_;
    Fp2 d4 = a2_ * o.a2_;
    return Fp6(d0 + d3 * ctx_->t3[0] + d4 * ctx_->t4[0],
               d1 + d3 * ctx_->t3[1] + d4 * ctx_->t4[1],
               d2 + d3 * ctx_->t3[2] + d4 * ctx_->t4[2], ctx_);
}

Fp6 Fp6::pow(const mpz_class& n) const {
    require_context();
    if (n < 0) throw ParamError("Fp6::pow: negative exponent");
    Fp6 r = one(ctx_);
    if (n == 0) return r;
    std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Fp6 acc = *this;
    for (std::size_t i = nbits - 1; i-- > 0;) {
        acc = acc * acc;
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            acc = acc * *this;
    }
    return acc;
}

namespace {

// a0 + a1*t + a2*t^2 against a cached conjugate table.
Fp6 substitute_cached(const Fp6& a, const std::array<Fp2, 3>& t,
                      const std::array<Fp2, 3>& tsq) {
    const Fp6CtxPtr& ctx = a.ctx();
    Fp2 r0 = a.a0() + a.a1() * t[0] + a.a2() * tsq[0];
    Fp2 r1 = a.a1() * t[1] + a.a2() * tsq[1];
    Fp2 r2 = a.a1() * t[2] + a.a2() * tsq[2];
    return Fp6(std::move(r0), std::move(r1), std::move(r2), ctx);
}

} // namespace

Fp6 Fp6::frobenius_p2() const {
    require_context();
    // Coefficients are fixed by x -> x^(p^2); only theta moves.
    return substitute_cached(*this, ctx_->fr1, ctx_->fr1sq);
}

Fp2 Fp6::trace() const {
    require_context();
    Fp6 conj1 = substitute_cached(*this, ctx_->fr1, ctx_->fr1sq);
    Fp6 conj2 = substitute_cached(*this, ctx_->fr2, ctx_->fr2sq);
    Fp6 sum = *this + conj1 + conj2;
    if (!sum.a1_.is_zero() || !sum.a2_.is_zero())
        throw MathError("Fp6::trace: conjugate sum escaped GF(p^2); "
                        "field context is corrupt");
    return sum.a0_;
}

bool Fp6::operator==(const Fp6& o) const {
    require_same(o);
    return a0_ == o.a0_ && a1_ == o.a1_ && a2_ == o.a2_;
}

std::string Fp6::str() const {
    require_context();
    return a0_.str() + "," + a1_.str() + "," + a2_.str();
}

Fp6 Fp6::parse(const std::string& text, const Fp6CtxPtr& ctx) {
    std::array<mpz_class, 6> v;
    std::size_t pos = 0;
    for (int i = 0; i < 6; ++i) {
        std::size_t next = text.find(',', pos);
        bool last = (i == 5);
        if (last != (next == std::string::npos))
            throw FormatError("Fp6: expected six decimal coordinates");
        std::string piece =
            last ? text.substr(pos) : text.substr(pos, next - pos);
        if (v[i].set_str(piece, 10) != 0)
            throw FormatError("Fp6: bad decimal coordinate");
        pos = last ? pos : next + 1;
    }
    const PrimePtr& p = ctx->p;
    for (const auto& x : v)
        if (x < 0 || x >= *p) throw FormatError("Fp6: coordinate out of range");
    return Fp6(Fp2(v[0], v[1], p), Fp2(v[2], v[3], p), Fp2(v[4], v[5], p), ctx);
}

} // namespace xtrss
