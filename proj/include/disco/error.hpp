#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace disco {

// Every failure surfaced to callers carries a stable code ("E-SYNTAX", ...)
// so the CLI and tests can match on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace disco
