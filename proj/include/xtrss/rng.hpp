#ifndef XTRSS_RNG_HPP
#define XTRSS_RNG_HPP

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace xtrss {

// Deterministic randomness source. All sampling in the library goes through
// an explicitly injected Rng so that every artifact (parameter files,
// bulletins, reports) is byte-reproducible for a fixed seed. Built on
// mt19937_64, whose output stream is pinned by the C++ standard; uniform
// bignums are drawn by rejection from raw 64-bit words, never through
// distribution adapters.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t word() { return eng_(); }

    bool coin() { return (eng_() & 1u) != 0; }

    // Uniform in [0, n), n > 0.
    mpz_class below(const mpz_class& n);

    // Uniform in [lo, hi], inclusive on both ends.
    mpz_class range(const mpz_class& lo, const mpz_class& hi);

    // Uniform nbits-bit integer with the top bit forced, nbits >= 1.
    mpz_class bits(unsigned nbits);

private:
    std::mt19937_64 eng_;
};

} // namespace xtrss

#endif
