#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

/// Raised when a user function (q, delay, sampled table) cannot be evaluated at t.
class DomainError : public std::runtime_error {
public:
    DomainError(double t, std::string node, const std::string& message)
        : std::runtime_error(message + " at t=" + std::to_string(t) + " (" + node + ")"),
          t_(t),
          node_(std::move(node)) {}

    double t() const noexcept { return t_; }
    const std::string& node() const noexcept { return node_; }

private:
    double t_;
    std::string node_;
};

/// A root search or iteration failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rsl
