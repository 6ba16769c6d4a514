#pragma once

#include <stdexcept>
#include <string>

namespace hrg {

// Base error: carries a short machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Malformed files, unknown flags, shape mismatches: exit code 2 territory.
class InputError : public Error {
public:
    using Error::Error;
};

// A mathematically meaningful check failed (with witness): exit code 1 territory.
class CheckError : public Error {
public:
    using Error::Error;
};

} // namespace hrg
