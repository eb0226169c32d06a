#pragma once

#include <stdexcept>
#include <string>

namespace valkey {

/// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arithmetic that is undefined in the value group or the field.
class MathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bounded search or a precision cap ran out before an answer was certified.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stabilization window showed neither a fixed nor a strictly increasing pattern.
class Indeterminate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The operation is not defined for this representation.
class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The input does not meet the hypotheses of a sequence-level check.
class HypothesisViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace valkey
