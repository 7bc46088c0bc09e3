#pragma once

#include <stdexcept>
#include <string>

namespace vecmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)),
          expected_(expected), got_(got) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t got() const noexcept { return got_; }

private:
    std::size_t expected_;
    std::size_t got_;
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t index, std::size_t size)
        : Error("index " + std::to_string(index) + " out of range (size " + std::to_string(size) +
                ")") {}
};

/// Malformed or inconsistent input data (bad cone, bad metric, bad exponent, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A solver precondition does not hold on the instance (start outside the domain, ...).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// The start point lies outside the domain of the potential or gauge (no certificate exists).
class NotInDomain : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

/// An iterative engine exceeded its step cap.
class NonTermination : public Error {
public:
    using Error::Error;
};

}  // namespace vecmax
