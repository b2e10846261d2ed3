#pragma once

#include <stdexcept>
#include <string>

namespace th {

// Malformed or inconsistent input. `path` names the offending field when known.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg, std::string path = {})
        : std::runtime_error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A numeric routine could not produce a trustworthy answer.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace th
