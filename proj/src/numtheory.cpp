#include "xtrss/numtheory.hpp"

#include "xtrss/errors.hpp"

namespace xtrss {

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class invmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw MathError("invmod: element not invertible");
    return r;
}

namespace {

const mpz_class kTrialCutoff = mpz_class(1) << 48;

bool trial_division_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    mpz_class d = 3;
    while (d * d <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
        d += 2;
    }
    return true;
}

} // namespace

bool is_prime(const mpz_class& n) {
    if (n < kTrialCutoff) return trial_division_prime(n);
    // BPSW plus 64 Miller-Rabin rounds; composite slips through with
    // probability far below 2^-128.
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

std::vector<mpz_class> factor_small(mpz_class n) {
    if (n <= 1) throw ParamError("factor_small: need n > 1");
    if (n >= kTrialCutoff)
        throw ParamError("factor_small: operand too large for trial division");
    std::vector<mpz_class> primes;
    auto take = [&](const mpz_class& d) {
        primes.push_back(d);
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
    };
    if (mpz_even_p(n.get_mpz_t())) take(2);
    mpz_class d = 3;
    while (d * d <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) take(d);
        d += 2;
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

mpz_class sqrt_mod(const mpz_class& a_in, const mpz_class& p) {
    mpz_class a = mod(a_in, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    mpz_class exp = (p - 1) / 2, legendre;
    mpz_powm(legendre.get_mpz_t(), a.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
    if (legendre != 1) throw MathError("sqrt_mod: non-residue");

    // p = s * 2^e + 1 with s odd.
    mpz_class s = p - 1;
    unsigned long e = 0;
    while (mpz_even_p(s.get_mpz_t())) {
        s /= 2;
        ++e;
    }
    if (e == 1) {
        mpz_class r;
        mpz_class k = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t(), p.get_mpz_t());
        return r;
    }

    // Find a non-residue deterministically.
    mpz_class z = 2;
    for (;;) {
        mpz_class l;
        mpz_powm(l.get_mpz_t(), z.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
        if (l == p - 1) break;
        ++z;
    }

    mpz_class c, r, t, b;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
    mpz_class s1 = (s + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), s1.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
    unsigned long m = e;
    while (t != 1) {
        mpz_class t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = mod(t2 * t2, p);
            ++i;
            if (i == m) throw MathError("sqrt_mod: internal failure");
        }
        b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, p);
        r = mod(r * b, p);
        c = mod(b * b, p);
        t = mod(t * c, p);
        m = i;
    }
    return r;
}

mpz_class binomial(int k, int j) {
    if (k < 0 || j < 0 || j > k) throw ParamError("binomial: index out of range");
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k),
                 static_cast<unsigned long>(j));
    return r;
}

mpz_class sign_of(long n, const mpz_class& q) {
    return (n % 2 == 0) ? mpz_class(1) : q - 1;
}

} // namespace xtrss
