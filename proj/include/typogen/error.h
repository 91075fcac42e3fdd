#pragma once

#include <stdexcept>
#include <string>

namespace typogen {

// Every failure raised by the library carries a short machine-readable code
// ("invalid_stats", "distance", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace typogen
