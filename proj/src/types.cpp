#include "tsebench/types.hpp"

#include "tsebench/unicode.hpp"

namespace tsebench {

std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::kCa: return "ca";
    case Lang::kEs: return "es";
    case Lang::kEt: return "et";
    case Lang::kFr: return "fr";
    case Lang::kIt: return "it";
    case Lang::kZh: return "zh";
  }
  return "?";
}

std::optional<Lang> parse_lang(std::string_view code) {
  for (Lang lang : kAllLangs) {
    if (to_string(lang) == code) return lang;
  }
  return std::nullopt;
}

std::string_view to_string(Stance stance) {
  switch (stance) {
    case Stance::kAgainst: return "against";
    case Stance::kFavor: return "favor";
    case Stance::kNeutral: return "neutral";
  }
  return "?";
}

std::optional<Stance> parse_stance(std::string_view value) {
  for (Stance stance : kAllStances) {
    if (to_string(stance) == value) return stance;
  }
  return std::nullopt;
}

bool TargetLabel::is_valid_pool_label(std::string_view value) {
  if (value.empty() || value == kUnrelatedSpelling) return false;
  std::u32string cps = unicode::to_u32(value);
  if (cps.empty()) return false;
  for (char32_t c : cps) {
    if (unicode::is_whitespace(c)) return false;
  }
  return unicode::to_lower(value) == value;
}

std::optional<TargetLabel> TargetLabel::parse(std::string_view value) {
  if (value == kUnrelatedSpelling) return unrelated();
  if (!is_valid_pool_label(value)) return std::nullopt;
  return TargetLabel(std::string(value));
}

}  // namespace tsebench
