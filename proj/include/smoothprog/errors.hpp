#pragma once
#include <stdexcept>
#include <string>

namespace smoothprog {

// Error taxonomy. The CLI maps these to process exit codes:
//   ConfigError -> 2 (bad flags, malformed config, out-of-domain parameters)
//   NumericalError -> 3 (iteration failed to converge, undefined quantity)
//   CapacityError -> 4 (request exceeds a documented resource cap)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace smoothprog
