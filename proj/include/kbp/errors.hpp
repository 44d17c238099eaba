#pragma once

#include <stdexcept>
#include <string>

namespace kbp {

// Malformed input text (JSON, CSV, decimal strings).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration enumeration would exceed the configured cap.
class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition of an algorithm is not met by the given instance.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kbp
