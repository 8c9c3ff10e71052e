#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (cone text, address text, fractions, point paths).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value outside the domain an operation accepts (e.g. a parameter outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A truncation or enumeration requested at an unusable depth.
class DepthError : public Error {
public:
    using Error::Error;
};

/// Structural problem in a geometric model. `field()` names the offending
/// location, e.g. `clusters[0].arcs[2].head`.
class ModelError : public Error {
public:
    ModelError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An address that does not determine a cluster (or an arc) uniquely.
class AmbiguousAddress : public Error {
public:
    explicit AmbiguousAddress(std::vector<std::string> candidates)
        : Error(describe(candidates)), candidates_(std::move(candidates)) {}

    const std::vector<std::string>& candidates() const noexcept { return candidates_; }

private:
    static std::string describe(const std::vector<std::string>& c) {
        std::string s = "ambiguous address; candidates:";
        for (const auto& x : c) s += " " + x;
        return s;
    }
    std::vector<std::string> candidates_;
};

}  // namespace cantor
