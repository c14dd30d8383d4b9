#include "tsebench/error.hpp"

namespace tsebench {

std::string located(const std::string& source, std::size_t line, const std::string& message) {
  return source + ":" + std::to_string(line) + ": " + message;
}

}  // namespace tsebench
