#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fluctoptics {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic or conversion attempted between incompatible unit tags.
class UnitError : public Error {
public:
    explicit UnitError(const std::string& what) : Error(what) {}
};

// Precondition violation on a physical argument (negative temperature,
// empty mode list, angle out of range, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// The integrator refused to run or blew up: CFL bound violated, NaN in the
// field data. Maps to exit code 1 in the command line tool.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

// Scenario configuration rejected. Carries every issue found, not just the
// first. Maps to exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues);
    std::vector<std::string> issues_;
};

// Input file could not be opened. Maps to exit code 66.
class FileError : public Error {
public:
    explicit FileError(const std::string& what) : Error(what) {}
};

}  // namespace fluctoptics
