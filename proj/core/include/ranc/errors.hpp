#pragma once

#include <stdexcept>
#include <string>

namespace ranc {

// Operand shapes do not conform (elementwise ops, layer inputs, ...).
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where finite ones are required (gradients, signals).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (e.g. backward on a tensor that is not on the tape).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (odd key length, zero tolerance, ...).
struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or mismatched serialized data. `kind` distinguishes failures.
struct FormatError : std::runtime_error {
    enum class Kind { magic, version, truncated, checksum, dimensions, framing };
    FormatError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// Key is not a member of the expected pool.
struct KeyError : std::runtime_error {
    explicit KeyError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a converged model.
struct ModelStateError : std::runtime_error {
    explicit ModelStateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ranc
