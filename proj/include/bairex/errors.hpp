#pragma once

#include <stdexcept>
#include <string>

namespace bairex {

// Input that violates a documented contract (bad geometry, malformed
// instance, out-of-range ids, negative tolerance). Messages name the
// offending field or entry.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Document text that is not valid JSON at all.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

// Structurally valid inputs that do not belong together, e.g. a result
// checked against an instance it was not produced from.
class MismatchError : public std::runtime_error {
public:
    explicit MismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bairex
