#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redcalc {

/// Malformed textual input (tree literal, path literal, CSV cell).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// An operation was applied outside its domain (e.g. reducing a single leaf).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series division that should have been exact left a remainder.
class ExactnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or exact evaluation exceeds its configured cap.
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace redcalc
