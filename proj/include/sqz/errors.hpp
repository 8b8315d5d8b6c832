#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Error classes map onto CLI exit codes: configuration 2, infeasible
// calibration 3, incomplete data 4, numerical failure 5.

struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct infeasible_target_error : std::runtime_error {
  explicit infeasible_target_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct incomplete_dataset_error : std::runtime_error {
  explicit incomplete_dataset_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sqz
