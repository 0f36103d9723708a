#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace corpusmap::utf8 {

// Byte offset of the first invalid sequence, if any. Overlongs, surrogates
// and code points above U+10FFFF are rejected.
std::optional<std::size_t> find_invalid(std::string_view bytes);

// Throws Error(kInput) naming the byte offset of the first invalid sequence.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view chars);
std::string encode(char32_t c);

// Character classes. Coverage is ASCII plus Latin-1 for letters; whitespace
// includes the common Unicode space separators.
bool is_space(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);
std::string fold_case(std::string_view utf8_text);

// Number of code points in valid UTF-8.
std::size_t length(std::string_view utf8_text);

}  // namespace corpusmap::utf8
