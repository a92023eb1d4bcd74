#ifndef GMFB_ERRORS_HPP_
#define GMFB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gmfb {

// Invalid user-supplied configuration (bad parameter, unreadable file, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller broke an API precondition (dimension mismatch, out-of-order round, ...).
struct ContractError : std::logic_error {
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace gmfb

#endif  // GMFB_ERRORS_HPP_
