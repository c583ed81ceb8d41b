#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mono {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments that violate a documented precondition (bad modulus, bad shape of input data).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Operands whose dimensions or endpoints do not fit together.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A homomorphism that does not respect the relations of its source.
class IllDefinedHomomorphism : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class DiagonalBlockNotInvertible : public Error {
public:
    explicit DiagonalBlockNotInvertible(std::size_t row)
        : Error("diagonal block of row " + std::to_string(row) + " is not an automorphism"), row_(row) {}

    /// One-based star index of the offending block row.
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// The operator admits no factorisation into block-row automorphisms for the
/// given decomposition; `index()` is the first (one-based) failing step.
class NotRealizable : public Error {
public:
    explicit NotRealizable(std::size_t index)
        : Error("not realizable: diagonal block at step " + std::to_string(index) + " is not invertible"),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Duality was requested on a group with torsion.
class TorsionPresent : public Error {
public:
    using Error::Error;
};

class DegenerateSeifertForm : public Error {
public:
    using Error::Error;
};

/// Exact-sequence data that contradicts itself, so no verdict can be drawn from it.
class InconsistentData : public Error {
public:
    using Error::Error;
};

} // namespace mono
