#pragma once

#include <stdexcept>
#include <string>

namespace qbasim {

enum class ErrorCode {
    invalid_argument = 1,  // bad parameter or malformed input
    domain,                // operation evaluated outside its domain
    instability,           // dynamical model has no stable steady state
    calibration,           // calibration algebra left its validity region
    fit,                   // fit could not bracket or converge
    config,                // configuration file rejected
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace qbasim
