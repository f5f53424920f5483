#include "xtrss/nlr.hpp"

#include <set>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"

namespace xtrss {

namespace {

void require_q_vs_binomials(int k, const mpz_class& q) {
    // Largest binomial coefficient is the central one.
    if (q <= binomial(k, k / 2))
        throw ConstraintError("q must exceed every binomial coefficient C(k, j)");
}

mpz_class rhs(NlrVariant variant, long i, const mpz_class& c,
              const mpz_class& q) {
    mpz_class r = mod(c * i, q);
    if (variant == NlrVariant::Nlr1) r = mod(r * sign_of(i, q), q);
    return r;
}

// One forward step: u_{i+k} from the previous k terms, instance index i.
mpz_class step(NlrVariant variant, const std::vector<mpz_class>& terms,
               std::size_t end, long i, const mpz_class& c, int k,
               const mpz_class& q) {
    mpz_class acc = rhs(variant, i, c, q);
    for (int j = 1; j <= k; ++j) {
        mpz_class coef = binomial(k, j);
        if (variant == NlrVariant::Nlr2 && j % 2 == 1) coef = q - mod(coef, q);
        acc -= coef * terms[end - static_cast<std::size_t>(j)];
    }
    return mod(acc, q);
}

} // namespace

NlrSpec::NlrSpec(NlrVariant variant_in, int k_in, mpz_class q_in,
                 mpz_class c_in, std::vector<mpz_class> init_in)
    : variant(variant_in), k(k_in), q(std::move(q_in)), c(std::move(c_in)),
      init(std::move(init_in)) {
    if (k < 1) throw ParamError("NlrSpec: k must be positive");
    if (q <= 3) throw ParamError("NlrSpec: q must be a prime > 3");
    require_q_vs_binomials(k, q);
    if (c <= 0 || c >= q)
        throw ParamError("NlrSpec: constant must lie in GF(q)*");
    if (init.size() != static_cast<std::size_t>(k))
        throw ParamError("NlrSpec: need exactly k initial values");
    // The dealer samples initial values from GF(q)*, but the recursion is
    // well-defined for any residues, and zero seeds are useful in tests.
    for (const auto& v : init)
        if (v < 0 || v >= q)
            throw ParamError("NlrSpec: initial values must lie in [0, q)");
}

SubshadowSequence generate(const NlrSpec& spec, long upto) {
    if (upto < spec.k - 1)
        throw ParamError("generate: upto must cover the initial values");
    std::vector<mpz_class> terms = spec.init;
    terms.reserve(static_cast<std::size_t>(upto) + 1);
    for (long n = spec.k; n <= upto; ++n)
        terms.push_back(
            step(spec.variant, terms, terms.size(), n - spec.k, spec.c, spec.k,
                 spec.q));
    return SubshadowSequence{spec, std::move(terms)};
}

std::vector<mpz_class> extend_consecutive(NlrVariant variant,
                                          const std::vector<mpz_class>& window,
                                          long s, const mpz_class& c, int k,
                                          const mpz_class& q, long upto) {
    if (window.size() != static_cast<std::size_t>(k))
        throw ParamError("extend_consecutive: window must hold exactly k terms");
    if (s < 0) throw ParamError("extend_consecutive: negative start index");
    require_q_vs_binomials(k, q);
    std::vector<mpz_class> terms = window;
    for (long n = s + k; n <= upto; ++n)
        terms.push_back(step(variant, terms, terms.size(), n - k, c, k, q));
    return terms;
}

namespace {

std::vector<NlrPoint> mapped_points(NlrVariant variant,
                                    const std::vector<NlrPoint>& points,
                                    int k, const mpz_class& q) {
    if (points.size() < static_cast<std::size_t>(k) + 2)
        throw InsufficientSharesError(
            "polynomial recovery needs k+2 points");
    if (points.size() > static_cast<std::size_t>(k) + 2)
        throw ParamError("polynomial recovery takes exactly k+2 points");
    std::set<mpz_class> seen;
    std::vector<NlrPoint> out;
    out.reserve(points.size());
    for (const auto& [x, u] : points) {
        if (x < 0) throw ParamError("negative point index");
        if (!seen.insert(mod(mpz_class(x), q)).second)
            throw ParamError("duplicate interpolation node mod q");
        mpz_class v = mod(u, q);
        if (variant == NlrVariant::Nlr1) v = mod(v * sign_of(x, q), q);
        out.emplace_back(x, std::move(v));
    }
    return out;
}

} // namespace

RecoveredPolynomial recover_polynomial_lagrange(
    NlrVariant variant, const std::vector<NlrPoint>& points, int k,
    const mpz_class& q) {
    auto pts = mapped_points(variant, points, k, q);
    std::size_t n = pts.size();

    // Master polynomial M(x) = prod (x - x_i), little-endian coefficients.
    std::vector<mpz_class> master(n + 1, 0);
    master[0] = 1;
    std::size_t deg = 0;
    for (const auto& [x, u] : pts) {
        mpz_class neg = mod(mpz_class(-x), q);
        for (std::size_t i = deg + 1; i-- > 0;) {
            mpz_class shifted = (i > 0) ? master[i - 1] : mpz_class(0);
            master[i] = mod(master[i] * neg + shifted, q);
        }
        master[deg + 1] = 1;
        ++deg;
    }

    std::vector<mpz_class> coeffs(n, 0);
    for (const auto& [xi, yi] : pts) {
        // Q_i = M / (x - x_i) by synthetic division.
        std::vector<mpz_class> quot(n, 0);
        mpz_class carry = master[n];
        mpz_class node = mod(mpz_class(xi), q);
        for (std::size_t i = n; i-- > 0;) {
            quot[i] = carry;
            carry = mod(master[i] + carry * node, q);
        }
        mpz_class denom = 1;
        for (const auto& [xj, yj] : pts)
            if (xj != xi) denom = mod(denom * (mpz_class(xi) - xj), q);
        mpz_class scale = mod(yi * invmod(denom, q), q);
        for (std::size_t i = 0; i < n; ++i)
            coeffs[i] = mod(coeffs[i] + scale * quot[i], q);
    }
    return RecoveredPolynomial{std::move(coeffs)};
}

RecoveredPolynomial recover_polynomial_linsolve(
    NlrVariant variant, const std::vector<NlrPoint>& points, int k,
    const mpz_class& q) {
    auto pts = mapped_points(variant, points, k, q);
    std::size_t n = pts.size();

    // Vandermonde system, Gaussian elimination mod q.
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        mpz_class x = mod(mpz_class(pts[r].first), q), pw = 1;
        for (std::size_t col = 0; col < n; ++col) {
            m[r][col] = pw;
            pw = mod(pw * x, q);
        }
        m[r][n] = pts[r].second;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n)
            throw MathError("linsolve: singular Vandermonde system");
        std::swap(m[col], m[pivot]);
        mpz_class inv = invmod(m[col][col], q);
        for (std::size_t j = col; j <= n; ++j) m[col][j] = mod(m[col][j] * inv, q);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            mpz_class f = m[r][col];
            for (std::size_t j = col; j <= n; ++j)
                m[r][j] = mod(m[r][j] - f * m[col][j], q);
        }
    }
    std::vector<mpz_class> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = m[i][n];
    return RecoveredPolynomial{std::move(coeffs)};
}

RecoveredPolynomial recover_polynomial(NlrVariant variant,
                                       const std::vector<NlrPoint>& points,
                                       int k, const mpz_class& q) {
    auto lag = recover_polynomial_lagrange(variant, points, k, q);
    auto lin = recover_polynomial_linsolve(variant, points, k, q);
    if (lag.coeffs != lin.coeffs)
        throw MathError("recover_polynomial: interpolation and linear solve "
                        "disagree");
    return lag;
}

mpz_class eval_closed_form(NlrVariant variant, const RecoveredPolynomial& poly,
                           long i, const mpz_class& q) {
    mpz_class x = mod(mpz_class(i), q), acc = 0;
    for (std::size_t j = poly.coeffs.size(); j-- > 0;)
        acc = mod(acc * x + poly.coeffs[j], q);
    if (variant == NlrVariant::Nlr1) acc = mod(acc * sign_of(i, q), q);
    return acc;
}

} // namespace xtrss
