#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "tsebench/error.hpp"

namespace tsebench::jsonl {

// Key of the provenance header line that tool-written JSONL files start
// with. Readers skip lines whose object carries it.
inline constexpr const char* kMetaKey = "_meta";

// Throws IoError when the file cannot be opened.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

void write_line(std::ostream& out, const nlohmann::ordered_json& object);

// Calls `visit(object, line_number)` for every non-blank, non-header line.
// Unparseable or non-object lines raise ErrorT with the line number.
template <typename ErrorT, typename Visit>
void for_each_object(std::istream& in, const std::string& source, Visit&& visit) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ErrorT(located(source, line_no, std::string("invalid JSON: ") + e.what()));
    }
    if (!object.is_object()) {
      throw ErrorT(located(source, line_no, "expected a JSON object"));
    }
    if (object.contains(kMetaKey)) continue;
    visit(object, line_no);
  }
}

}  // namespace tsebench::jsonl
