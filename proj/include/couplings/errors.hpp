#pragma once

#include <stdexcept>
#include <string>

namespace couplings {

// Malformed input text (instance files, rational strings). CLI exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a semantic contract
// (non-bijective generator, marginal mass mismatch, ...). CLI exit code 3.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed the configured cap. CLI exit code 4.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace couplings
