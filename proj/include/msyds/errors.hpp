#ifndef MSYDS_ERRORS_HPP
#define MSYDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msyds {

// Violated precondition or internal invariant (caller bug).
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// Malformed input document (system file, CNF, configuration string).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is well formed but outside what the requested algorithm handles.
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a resource limit; nothing was computed.
struct RefusalError : std::runtime_error {
    explicit RefusalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace msyds

#endif
