#pragma once

#include <stdexcept>
#include <string>

namespace tsebench {

// Process exit codes shared by every subcommand.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kContract = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Malformed benchmark data, pool files, embeddings or config values.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ExitCode::kValidation, message) {}
};

// Missing or unreadable files.
class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ExitCode::kIo, message) {}
};

// A prediction-side file (predictions/mapped/stances) breaks its contract.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error(ExitCode::kContract, message) {}
};

// Formats "<source>:<line>: <message>".
std::string located(const std::string& source, std::size_t line,
                    const std::string& message);

}  // namespace tsebench
