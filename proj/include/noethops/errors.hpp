// Exception hierarchy shared by the whole library.
//
// The CLI maps these to process exit codes: ParseError -> 1,
// EngineError and DataIntegrityError -> 2, VerificationError -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace noethops {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (polynomials, operators, documents).
// Carries a zero-based character position when one is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, long position = -1)
        : Error(position >= 0 ? msg + " (at position " + std::to_string(position) + ")"
                              : msg),
          pos_(position) {}

    long position() const { return pos_; }

private:
    long pos_;
};

// A computation could not be carried out: budget exhausted, a cap was
// reached, or the input violates a semantic precondition.
class EngineError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed, e.g. a claimed prime ideal is not
// prime, or a subspace relation expected by the caller does not hold.
class DataIntegrityError : public Error {
public:
    using Error::Error;
};

// A produced or supplied decomposition failed verification.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace noethops
