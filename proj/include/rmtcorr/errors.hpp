#pragma once

#include <stdexcept>
#include <string>

namespace rmtcorr {

// Malformed or inconsistent input: bad CSV rows, impossible configuration,
// precondition violations on user-supplied data. CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to deliver its contract (e.g. an eigensolver
// that did not converge within its sweep budget). CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rmtcorr
