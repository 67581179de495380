#ifndef FOCKLAB_ERRORS_HPP
#define FOCKLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace focklab {

// Base class for all focklab failures so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed symbol text, invalid weight/indices, bad JSON.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// Symbol text that failed to parse; carries the offending position.
class SymbolParseError : public InputError {
public:
    SymbolParseError(const std::string& msg, std::size_t position)
        : InputError(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

// A requested matrix exceeds the supported size envelope.
class SizeLimitError : public Error {
public:
    explicit SizeLimitError(const std::string& msg) : Error(msg) {}
};

// A truncation-stability or verification check failed at runtime.
class StabilityError : public Error {
public:
    explicit StabilityError(const std::string& msg) : Error(msg) {}
};

// A quadrature rule was asked to integrate beyond its exactness degree.
class QuadratureDegreeError : public Error {
public:
    explicit QuadratureDegreeError(const std::string& msg) : Error(msg) {}
};

} // namespace focklab

#endif
