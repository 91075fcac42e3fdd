#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace typogen {

// Strings cross the library boundary as UTF-8; algorithms that count or index
// characters work on Unicode scalar values.

// Throws Error("utf8") on malformed input.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(char32_t c);

bool is_valid_utf8(std::string_view utf8);
std::size_t char_count(std::string_view utf8);

bool is_space(char32_t c);

// Strips leading/trailing Unicode whitespace.
std::string trim(std::string_view utf8);

// Whitespace-separated fragments, empty fragments skipped.
std::vector<std::string> split_tokens(std::string_view utf8);

// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

}  // namespace typogen
