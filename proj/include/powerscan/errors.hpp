#pragma once

#include <stdexcept>
#include <string>

namespace powerscan {

// Thrown when a sample (or a tail of it) has too few observations for the
// requested operation. The CLI maps this to its own exit code.
class insufficient_data_error : public std::runtime_error {
 public:
  explicit insufficient_data_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace powerscan
