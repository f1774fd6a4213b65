#ifndef POPUC_ERRORS_HPP
#define POPUC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popuc {

/// Base class for all errors raised by this library (standard exceptions
/// like std::invalid_argument are still used for plain argument mistakes).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A sequence failed the positive-chain-sequence test; carries the first
/// offending index (1-based, matching d_1, d_2, ...).
class ChainError : public Error {
public:
    ChainError(const std::string& msg, std::size_t index)
        : Error(msg + " (index " + std::to_string(index) + ")"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// An internal identity that must hold analytically failed numerically
/// (exact division left a residue, a self-inversive value had a large
/// imaginary part, ...). Signals upstream data corruption, not user error.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A quantity that a lemma guarantees positive (weight, Wronskian value)
/// came out nonpositive or non-real beyond tolerance.
class LemmaViolation : public Error {
public:
    using Error::Error;
};

/// A zero could not be isolated inside its interlacing bracket.
class ZeroIsolationError : public Error {
public:
    using Error::Error;
};

/// Principal value extrapolation did not settle.
class PvDivergenceError : public Error {
public:
    using Error::Error;
};

/// A Moebius step degenerated (rho * alpha numerically reached 1).
class SingularTransformError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a non-SPPCS chain was refused.
class SppcsRefusal : public Error {
public:
    using Error::Error;
};

/// A required numeric estimate did not converge, so the operation refuses
/// to guess rather than return a wrong value.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

} // namespace popuc

#endif
