#pragma once

#include <stdexcept>
#include <string>

namespace atsuji {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside the operation's domain (eps <= 0, t <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A point index or id does not belong to the space.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A structural precondition on set arguments does not hold (K not inside U, A meets B, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A space could not be built: duplicate ids, coincident points, malformed or non-metric matrix.
class ConstructionError : public Error {
public:
    using Error::Error;
};

}  // namespace atsuji
