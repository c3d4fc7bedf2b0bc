#pragma once

#include <stdexcept>
#include <string>

namespace wardrop {

// Bad indices, malformed networks, infeasible flows.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// File / JSON ingestion problems; carries a human-readable location.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature failures, non-finite values, solver rejections.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Theorem hypotheses unmet: non-regularly-comparable costs, missing tight
// pair, degenerate limit values.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wardrop
