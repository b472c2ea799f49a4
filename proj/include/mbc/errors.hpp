#pragma once

#include <stdexcept>
#include <string>

namespace mbc {

// Argument outside the mathematical domain of an operation (negative
// extended natural, symbol outside the alphabet, k > n, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A value violates a structural invariant the caller was responsible for.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for everything that can go wrong while reading an encoded stream.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Stream ended in the middle of a codeword or header.
class TruncationError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

// Stream is long enough but does not describe a valid object.
class CorruptionError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mbc
