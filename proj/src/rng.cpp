#include "xtrss/rng.hpp"

#include "xtrss/errors.hpp"

namespace xtrss {

namespace {

// nbits random bits assembled from whole words, most significant word first.
mpz_class raw_bits(std::mt19937_64& eng, std::size_t nbits) {
    mpz_class out = 0;
    std::size_t words = (nbits + 63) / 64;
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t w = eng();
        mpz_class word_val = static_cast<unsigned long>(w >> 32);
        word_val <<= 32;
        word_val += static_cast<unsigned long>(w & 0xffffffffu);
        out <<= 64;
        out += word_val;
    }
    // Keep exactly nbits.
    mpz_class mask = (mpz_class(1) << nbits) - 1;
    return out & mask;
}

} // namespace

mpz_class Rng::below(const mpz_class& n) {
    if (n <= 0) throw ParamError("Rng::below: bound must be positive");
    std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (;;) {
        mpz_class candidate = raw_bits(eng_, nbits);
        if (candidate < n) return candidate;
    }
}

mpz_class Rng::range(const mpz_class& lo, const mpz_class& hi) {
    if (lo > hi) throw ParamError("Rng::range: empty range");
    return lo + below(hi - lo + 1);
}

mpz_class Rng::bits(unsigned nbits) {
    if (nbits == 0) throw ParamError("Rng::bits: need at least one bit");
    mpz_class out = raw_bits(eng_, nbits);
    mpz_setbit(out.get_mpz_t(), nbits - 1);
    return out;
}

} // namespace xtrss
