#ifndef XTRSS_ERRORS_HPP
#define XTRSS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace xtrss {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: out-of-range values, mismatched field contexts, duplicate
// interpolation nodes, malformed identifiers.
class ParamError : public Error {
public:
    using Error::Error;
};

// Internal algebraic impossibility (division by zero, trace escaping the
// base field). Signals a corrupted context, not a user mistake.
class MathError : public Error {
public:
    using Error::Error;
};

// q too small for the requested threshold, or similar scheme-level
// inequality failures.
class ConstraintError : public Error {
public:
    using Error::Error;
};

// Parameter search ran out of attempts; retry with a different seed.
class GenerationError : public Error {
public:
    using Error::Error;
};

// Unparseable or internally inconsistent file content.
class FormatError : public Error {
public:
    using Error::Error;
};

// Duplicate or unknown participant identifier.
class IdentityError : public Error {
public:
    using Error::Error;
};

// Two participants registered the same public shadow; the caller must
// regenerate the offending keypair.
class ShadowCollisionError : public Error {
public:
    using Error::Error;
};

class InsufficientSharesError : public Error {
public:
    using Error::Error;
};

// A published group element failed a structural check (e.g. subgroup
// membership), so the verification equations do not even apply.
class MalformedBulletinError : public Error {
public:
    using Error::Error;
};

// The shared blinding key reduced to zero mod q; the caller re-draws b.
class BlindingDegenerateError : public Error {
public:
    using Error::Error;
};

class CorruptCiphertextError : public Error {
public:
    using Error::Error;
};

// Cross-verification failed for one or more recovery shares. Carries the
// identifiers of every offending share.
class CheaterError : public Error {
public:
    CheaterError(const std::string& msg, std::vector<std::string> ids)
        : Error(msg), ids_(std::move(ids)) {}
    const std::vector<std::string>& ids() const { return ids_; }

private:
    std::vector<std::string> ids_;
};

} // namespace xtrss

#endif
