#pragma once

#include <stdexcept>
#include <string>

namespace carefree {

// Bad input: out-of-range arguments, unknown identifiers, violated preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A request exceeds a table size, an engineering cap, or the exact-integer range.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The binary sieve cache is unreadable, truncated or inconsistent.
class CacheFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A high-precision computation could not certify the requested accuracy.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace carefree
