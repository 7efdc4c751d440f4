#pragma once

#include <stdexcept>
#include <string>

namespace chowstab {

/// Malformed or schema-violating input document.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input parses but the requested analysis does not apply to it
/// (e.g. a point command on a subspace configuration).
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented operation precondition does not hold
/// (un-normalized subgroup weights, bad codimension, overlapping centers, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chowstab
