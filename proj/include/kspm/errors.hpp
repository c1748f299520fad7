#ifndef KSPM_ERRORS_HPP
#define KSPM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kspm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Attempt to fire a column whose slope is at most p.
class FiringStableColumn : public Error {
public:
    using Error::Error;
};

/// An Explicit firing sequence ran out before the configuration was stable.
class IncompleteExplicitSequence : public Error {
public:
    using Error::Error;
};

/// Stabilization exceeded the m*(m+1) firing guard.
class InternalBoundExceeded : public Error {
public:
    using Error::Error;
};

class NotInGSM : public Error {
public:
    using Error::Error;
};

class KOutOfRange : public Error {
public:
    using Error::Error;
};

/// A firing sequence is neither a peak nor a col at some step.  Seeing this
/// on a canonical avalanche means a bug in the stabilizer.
class StructureViolation : public Error {
public:
    using Error::Error;
};

class ConfigTooShort : public Error {
public:
    using Error::Error;
};

class PositionOutOfRange : public Error {
public:
    using Error::Error;
};

/// p exceeds the transfer-table build cap (tables have 2^p entries).
class PTooLarge : public Error {
public:
    using Error::Error;
};

class SpanMismatch : public Error {
public:
    using Error::Error;
};

class WindowTooNarrow : public Error {
public:
    using Error::Error;
};

class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

/// Deciders disagreed while benchmarking; carries a witness description.
class MethodDisagreement : public Error {
public:
    using Error::Error;
};

/// Text/JSON parse failure with 1-based line and column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::int64_t line, std::int64_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::int64_t line() const { return line_; }
    std::int64_t column() const { return column_; }

private:
    std::int64_t line_;
    std::int64_t column_;
};

}  // namespace kspm

#endif
