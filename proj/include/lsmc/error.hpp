#ifndef LSMC_ERROR_HPP
#define LSMC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lsmc {

// Process exit codes double as error categories; keep in sync with the CLI --help text.
enum class ErrorCode : int {
    internal = 1,
    config = 2,
    io = 3,
    coverage = 4,
    calibration = 5,
    collinearity = 6,
    budget_exceeded = 7,
    invalid_argument = 8,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lsmc

#endif // LSMC_ERROR_HPP
