#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace prejsim {

/// A society or scenario description violates one of its structural invariants.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller asked for something that does not exist (unknown preset, selector, flag).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside the domain of the function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace prejsim
