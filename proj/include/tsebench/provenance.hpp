#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tsebench {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
// Throws IoError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

// Header attached to every output: tool version, config hash and the digests
// of the input files it was computed from. Contains nothing run-specific, so
// identical inputs give byte-identical outputs.
struct Provenance {
  std::string tool_version{kToolVersion};
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> inputs;  // role -> sha256

  void add_input(std::string role, const std::filesystem::path& path);

  nlohmann::ordered_json to_json() const;
  // "# key: value" comment lines for text outputs.
  std::string to_text_header() const;
};

}  // namespace tsebench
