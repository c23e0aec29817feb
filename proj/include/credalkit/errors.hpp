#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credalkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text: formulas, numbers, model or evidence files.
/// Carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Values built over different spaces were combined.
class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// Conditioning (or an operator that needs it) hit a zero-probability event.
class ConditioningUndefinedError : public Error {
public:
    using Error::Error;
};

/// A revision operator received evidence that contradicts certainty in the
/// belief base. Imaging operators never raise this.
class PartialityViolationError : public Error {
public:
    using Error::Error;
};

/// Imaging on an unsatisfiable formula: no closest world exists.
class NoClosestWorldError : public Error {
public:
    using Error::Error;
};

/// An interval specification describes an empty polytope.
class InfeasibleSpecError : public Error {
public:
    using Error::Error;
};

/// Input exceeds the size this implementation enumerates exactly.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// The request itself is malformed: an operator paired with the wrong kind
/// of evidence or belief representation, bad command-line usage.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace credalkit
