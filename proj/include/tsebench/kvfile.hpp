#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace tsebench {

// One `key = value` line of a flat key/value file. Values may be bare
// (trimmed to end of line) or double-quoted with \" \\ \n \t escapes.
// Blank lines and lines starting with '#' are skipped.
struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::vector<KvEntry> parse_kv(std::istream& in, const std::string& source);
std::vector<KvEntry> read_kv_file(const std::filesystem::path& path);

// Inverse of the quoted form accepted by parse_kv.
std::string quote_kv_value(std::string_view value);

}  // namespace tsebench
