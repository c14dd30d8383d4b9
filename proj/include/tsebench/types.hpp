#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tsebench {

enum class Lang { kCa, kEs, kEt, kFr, kIt, kZh };

inline constexpr std::array<Lang, 6> kAllLangs = {
    Lang::kCa, Lang::kEs, Lang::kEt, Lang::kFr, Lang::kIt, Lang::kZh};

std::string_view to_string(Lang lang);
std::optional<Lang> parse_lang(std::string_view code);

enum class Stance { kAgainst, kFavor, kNeutral };

inline constexpr std::array<Stance, 3> kAllStances = {
    Stance::kAgainst, Stance::kFavor, Stance::kNeutral};

std::string_view to_string(Stance stance);
std::optional<Stance> parse_stance(std::string_view value);

// A pool target label ("catalonia") or the Unrelated sentinel. Pool labels
// are non-empty, lowercase and contain no whitespace.
class TargetLabel {
 public:
  static constexpr std::string_view kUnrelatedSpelling = "unrelated";

  static TargetLabel unrelated() { return TargetLabel(std::string(kUnrelatedSpelling)); }

  // "unrelated" parses to the sentinel; anything violating the label rules
  // yields nullopt.
  static std::optional<TargetLabel> parse(std::string_view value);

  static bool is_valid_pool_label(std::string_view value);

  bool is_unrelated() const { return value_ == kUnrelatedSpelling; }
  const std::string& str() const { return value_; }

  auto operator<=>(const TargetLabel&) const = default;
  bool operator==(const TargetLabel&) const = default;

 private:
  explicit TargetLabel(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

struct Sample {
  std::string id;
  Lang lang;
  std::string text;
  TargetLabel target;
  Stance stance;

  bool operator==(const Sample&) const = default;
};

}  // namespace tsebench
