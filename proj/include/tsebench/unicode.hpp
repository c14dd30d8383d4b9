#pragma once

#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU.
namespace tsebench::unicode {

std::string nfc(std::string_view utf8);

// Simple (per code point) lowercase mapping.
std::string to_lower(std::string_view utf8);

// Splits on Unicode White_Space; empty pieces are dropped.
std::vector<std::string> split_whitespace(std::string_view utf8);

// Removes leading and trailing punctuation code points.
std::string strip_punctuation(std::string_view utf8);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);

bool is_whitespace(char32_t c);
bool is_cjk_ideograph(char32_t c);

}  // namespace tsebench::unicode
