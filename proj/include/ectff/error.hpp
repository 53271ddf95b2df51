#pragma once

#include <stdexcept>
#include <string>

namespace ectff {

// Violated precondition or malformed input; the CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A guard that should be unreachable fired (walk cap, flag/numeric disagreement).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ectff
