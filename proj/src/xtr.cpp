#include "xtrss/xtr.hpp"

#include <map>
#include <sstream>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"

namespace xtrss {

namespace {

constexpr unsigned kSmallLambdaCutoff = 24;

mpz_class xtr_order(const mpz_class& p) { return p * p - p + 1; }

} // namespace

void XtrParams::build_table() {
    g_squares.clear();
    std::size_t nbits = mpz_sizeinbase(q.get_mpz_t(), 2);
    g_squares.reserve(nbits);
    Fp6 acc = g;
    for (std::size_t i = 0; i < nbits; ++i) {
        g_squares.push_back(acc);
        acc = acc * acc;
    }
}

Fp6 XtrParams::g_pow(const mpz_class& e) const {
    if (e < 0) throw ParamError("g_pow: negative exponent");
    std::size_t nbits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    if (g_squares.empty() || nbits > g_squares.size()) return g.pow(e);
    Fp6 acc = Fp6::one(field);
    for (std::size_t i = 0; i < nbits; ++i)
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            acc = acc * g_squares[i];
    return acc;
}

Fp2 trace_ladder(const Fp2& c, const mpz_class& n) {
    if (n < 0) throw ParamError("trace_ladder: negative index");
    const PrimePtr& p = c.prime();
    Fp2 three = Fp2::from_int(3, p);
    if (n == 0) return three;

    Fp2 cm = three;                               // c_{u-1}
    Fp2 cu = c;                                   // c_u
    Fp2 cp1 = c.square() - (c.frobenius() + c.frobenius()); // c_{u+1} = c_2
    std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = nbits - 1; i-- > 0;) {
        Fp2 cup = cu.frobenius();
        Fp2 dbl = cu.square() - (cup + cup);               // c_{2u}
        Fp2 hi = cp1 * cu - c * cup + cm.frobenius();      // c_{2u+1}
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            Fp2 cp1p = cp1.frobenius();
            cm = std::move(dbl);
            cu = std::move(hi);
            cp1 = cp1.square() - (cp1p + cp1p);            // c_{2u+2}
        } else {
            Fp2 lo = cm * cu - c.frobenius() * cup + cp1.frobenius(); // c_{2u-1}
            cm = std::move(lo);
            cp1 = std::move(hi);
            cu = std::move(dbl);
        }
    }
    return cu;
}

namespace {

// Shared tail of both generation strategies: find c with F(c, X)
// irreducible, project theta onto the order-q subgroup, then rebase the
// field model on the trace of the resulting generator.
XtrParams field_setup(const mpz_class& p, const mpz_class& q, unsigned lambda,
                      Rng& rng, unsigned attempts) {
    PrimePtr pp = make_prime(p);
    mpz_class cofactor = xtr_order(p) / q;
    for (unsigned i = 0; i < attempts; ++i) {
        Fp2 cand = Fp2::random(pp, rng);
        if (!cubic_irreducible(cand)) continue;
        Fp6CtxPtr ring = Fp6Ctx::make(cand);
        Fp6 g0 = Fp6::theta(ring).pow(cofactor);
        if (g0.is_one()) continue;
        Fp2 c = g0.trace();
        if (!cubic_irreducible(c)) continue; // cannot happen for order-q g0
        XtrParams params;
        params.lambda = lambda;
        params.p = p;
        params.q = q;
        params.field = Fp6Ctx::make(c);
        params.g = Fp6::theta(params.field);
        if (!params.g.pow(q).is_one())
            throw MathError("field_setup: generator order mismatch");
        params.build_table();
        return params;
    }
    throw GenerationError("field_setup: no usable trace parameter found");
}

XtrParams generate_small(unsigned lambda, Rng& rng, unsigned attempts) {
    for (unsigned i = 0; i < attempts; ++i) {
        mpz_class p = rng.bits(lambda);
        if (p <= 3 || mod(p, 3) != 2 || !is_prime(p)) continue;
        auto primes = factor_small(xtr_order(p));
        mpz_class q = primes.back();
        if (q <= 3) continue;
        return field_setup(p, q, lambda, rng, attempts);
    }
    throw GenerationError("generate_params: prime search exhausted");
}

XtrParams generate_large(unsigned lambda, Rng& rng, unsigned attempts) {
    mpz_class lo = mpz_class(1) << (lambda - 1);
    mpz_class hi = mpz_class(1) << lambda;
    // A lambda-bit window holds at most one residue mod 3q per root, so
    // most prime q yield no usable p; the bound counts q draws, and each
    // prime q contributes two candidate progressions.
    for (unsigned i = 0; i < attempts; ++i) {
        mpz_class q = rng.bits(lambda);
        mpz_setbit(q.get_mpz_t(), 0);
        if (mod(q, 3) != 1 || !is_prime(q)) continue;
        // Roots of x^2 - x + 1 mod q are (1 +- sqrt(-3)) / 2.
        mpz_class s = sqrt_mod(q - 3, q);
        mpz_class half = invmod(2, q);
        for (const mpz_class& root : {mod((1 + s) * half, q),
                                      mod((1 + q - s) * half, q)}) {
            // p = root (mod q) and p = 2 (mod 3), lifted mod 3q.
            mpz_class p0 = root;
            while (mod(p0, 3) != 2) p0 += q;
            mpz_class step = 3 * q;
            mpz_class t = (lo - p0 + step - 1) / step;
            if (t < 0) t = 0;
            for (mpz_class cand = p0 + t * step; cand < hi; cand += step) {
                if (cand < lo || !is_prime(cand)) continue;
                return field_setup(cand, q, lambda, rng, attempts);
            }
        }
    }
    throw GenerationError("generate_params: prime search exhausted");
}

} // namespace

XtrParams generate_params(unsigned lambda, Rng& rng, unsigned attempts) {
    if (lambda < 5) throw ParamError("generate_params: lambda must be >= 5");
    if (attempts == 0) throw GenerationError("generate_params: attempt bound is zero");
    return lambda <= kSmallLambdaCutoff ? generate_small(lambda, rng, attempts)
                                        : generate_large(lambda, rng, attempts);
}

XtrParams make_params(const mpz_class& p, const mpz_class& q, Rng& rng,
                      unsigned lambda, unsigned attempts) {
    if (p <= 3 || q <= 3 || !is_prime(p) || !is_prime(q))
        throw ParamError("make_params: p and q must be primes > 3");
    if (mod(p, 3) != 2) throw ParamError("make_params: p must be 2 (mod 3)");
    if (!mpz_divisible_p(xtr_order(p).get_mpz_t(), q.get_mpz_t()))
        throw ParamError("make_params: q does not divide p^2 - p + 1");
    unsigned bits = static_cast<unsigned>(mpz_sizeinbase(p.get_mpz_t(), 2));
    return field_setup(p, q, lambda ? lambda : bits, rng, attempts);
}

void validate_params(const XtrParams& params) {
    if (!params.field || params.g.ctx() != params.field)
        throw ParamError("params: missing or inconsistent field context");
    if (params.p <= 3 || !is_prime(params.p))
        throw ParamError("params: p is not a prime > 3");
    if (params.q <= 3 || !is_prime(params.q))
        throw ParamError("params: q is not a prime > 3");
    if (mod(params.p, 3) != 2)
        throw ParamError("params: p != 2 (mod 3)");
    if (!mpz_divisible_p(xtr_order(params.p).get_mpz_t(), params.q.get_mpz_t()))
        throw ParamError("params: q does not divide p^2 - p + 1");
    if (*params.field->p != params.p)
        throw ParamError("params: field context modulus mismatch");
    if (!cubic_irreducible(params.c()))
        throw ParamError("params: F(c, X) is reducible");
    if (params.g.is_one() || params.g.is_zero())
        throw ParamError("params: trivial generator");
    if (!params.g.pow(params.q).is_one())
        throw ParamError("params: generator order does not divide q");
    if (params.g.trace() != params.c())
        throw ParamError("params: Tr(g) != c");
}

XtrKeypair keygen(const XtrParams& params, Rng& rng) {
    mpz_class x = rng.range(2, params.q - 1);
    return XtrKeypair{x, trace_ladder(params.c(), x)};
}

mpz_class encode_to_zq(const Fp2& t, const mpz_class& q) {
    return mod(t.z1() + t.z2() * *t.prime(), q);
}

ScalarCiphertext encrypt_scalar(const XtrParams& params, const Fp2& y,
                                const mpz_class& b, const mpz_class& u) {
    if (b <= 1 || b >= params.q - 2)
        throw ParamError("encrypt_scalar: b outside (1, q-2)");
    if (u < 0 || u >= params.q)
        throw ParamError("encrypt_scalar: plaintext outside [0, q)");
    mpz_class kappa = encode_to_zq(trace_ladder(y, b), params.q);
    if (kappa == 0)
        throw BlindingDegenerateError("encrypt_scalar: blinding key is 0 mod q");
    return ScalarCiphertext{trace_ladder(params.c(), b),
                            mod(kappa * u, params.q)};
}

mpz_class decrypt_scalar(const XtrParams& params, const ScalarCiphertext& ct,
                         const mpz_class& x) {
    if (x <= 1 || x >= params.q)
        throw ParamError("decrypt_scalar: x outside (1, q)");
    if (ct.body < 0 || ct.body >= params.q)
        throw CorruptCiphertextError("decrypt_scalar: body outside [0, q)");
    mpz_class kappa = encode_to_zq(trace_ladder(ct.header, x), params.q);
    if (kappa == 0)
        throw CorruptCiphertextError("decrypt_scalar: blinding key is 0 mod q");
    return mod(ct.body * invmod(kappa, params.q), params.q);
}

bool subgroup_check(const XtrParams& params, const Fp6& t) {
    if (!t.ctx() || !t.ctx()->same_as(*params.field))
        throw ParamError("subgroup_check: foreign field context");
    if (t.is_zero()) return false;
    return t.pow(params.q).is_one();
}

std::string write_params(const XtrParams& params) {
    std::ostringstream out;
    out << "lambda=" << params.lambda << "\n";
    out << "p=" << params.p.get_str() << "\n";
    out << "q=" << params.q.get_str() << "\n";
    out << "c.z1=" << params.c().z1().get_str() << "\n";
    out << "c.z2=" << params.c().z2().get_str() << "\n";
    out << "g=" << params.g.str() << "\n";
    return out.str();
}

XtrParams read_params(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("params: expected key=value, got \"" + line + "\"");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    for (const char* key : {"lambda", "p", "q", "c.z1", "c.z2", "g"})
        if (!kv.count(key))
            throw FormatError(std::string("params: missing key ") + key);

    XtrParams params;
    try {
        params.lambda = static_cast<unsigned>(std::stoul(kv["lambda"]));
    } catch (const std::exception&) {
        throw FormatError("params: bad lambda");
    }
    if (params.p.set_str(kv["p"], 10) != 0 || params.q.set_str(kv["q"], 10) != 0)
        throw FormatError("params: bad decimal integer");
    PrimePtr pp = make_prime(params.p);
    Fp2 c = Fp2::parse(kv["c.z1"] + "," + kv["c.z2"], pp);
    params.field = Fp6Ctx::make(c);
    params.g = Fp6::parse(kv["g"], params.field);
    validate_params(params);
    params.build_table();
    return params;
}

} // namespace xtrss
