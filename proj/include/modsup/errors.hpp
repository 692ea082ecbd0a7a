#ifndef MODSUP_ERRORS_HPP
#define MODSUP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modsup {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two generators were combined under a relation their alphabets do not satisfy.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// The same event name carries conflicting controllability flags.
class ControllabilityMismatch : public Error {
public:
    using Error::Error;
};

/// A coordinator alphabet falls outside the required sandwich
/// (shared events below, union of component alphabets above).
class AlphabetBounds : public Error {
public:
    using Error::Error;
};

/// An operation was invoked on inputs that violate its stated precondition.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// The specification's closure is not contained in the plant language.
class SpecOutsidePlant : public Error {
public:
    using Error::Error;
};

/// A prefix-closed language was required but the input is not prefix-closed.
class NotPrefixClosed : public Error {
public:
    using Error::Error;
};

/// A projection required to be an observer is not one.
class ObserverViolation : public Error {
public:
    using Error::Error;
};

/// Malformed input text (generator files, manifests, CLI event lists).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid generator (nondeterminism, dangling ids, bad names).
class InvariantError : public Error {
public:
    using Error::Error;
};

/// A bounded enumeration exceeded its configured word budget.
class DepthOverflow : public Error {
public:
    using Error::Error;
};

} // namespace modsup

#endif
