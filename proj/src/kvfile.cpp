#include "tsebench/kvfile.hpp"

#include <fstream>

#include "tsebench/error.hpp"

namespace tsebench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view raw, const std::string& source, std::size_t line) {
  // raw starts with '"'.
  std::string value;
  std::size_t i = 1;
  for (; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '"') break;
    if (c == '\\') {
      if (++i == raw.size()) break;
      switch (raw[i]) {
        case '"': value.push_back('"'); break;
        case '\\': value.push_back('\\'); break;
        case 'n': value.push_back('\n'); break;
        case 't': value.push_back('\t'); break;
        default:
          throw ValidationError(located(source, line, "unknown escape sequence"));
      }
      continue;
    }
    value.push_back(c);
  }
  if (i >= raw.size()) throw ValidationError(located(source, line, "unterminated string"));
  std::string_view rest = trim(raw.substr(i + 1));
  if (!rest.empty() && rest.front() != '#') {
    throw ValidationError(located(source, line, "trailing characters after quoted value"));
  }
  return value;
}

}  // namespace

std::vector<KvEntry> parse_kv(std::istream& in, const std::string& source) {
  std::vector<KvEntry> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(located(source, line_no, "expected `key = value`"));
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError(located(source, line_no, "empty key"));
    KvEntry entry;
    entry.key = std::string(key);
    entry.line = line_no;
    entry.value = (!value.empty() && value.front() == '"') ? unquote(value, source, line_no)
                                                           : std::string(value);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<KvEntry> read_kv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_kv(in, path.string());
}

std::string quote_kv_value(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace tsebench
