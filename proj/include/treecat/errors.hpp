#pragma once

#include <stdexcept>
#include <string>

namespace treecat {

// Base error carrying a short machine-readable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Bad input: malformed graphs, maps that are not morphisms, schema violations.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Size guards: inputs that exceed the configured desk-scale limits.
class GuardError : public Error {
public:
    using Error::Error;
};

// Broken internal expectation; always a bug, never a user error.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace treecat
