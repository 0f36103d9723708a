#include "corpusmap/utf8.hpp"

#include "corpusmap/error.hpp"

namespace corpusmap::utf8 {
namespace {

struct Decoded {
  char32_t value;
  std::size_t width;  // 0 on error
};

Decoded decode_one(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};

  std::size_t width;
  char32_t value;
  char32_t min_value;
  if ((b0 & 0xE0) == 0xC0) {
    width = 2;
    value = b0 & 0x1F;
    min_value = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    width = 3;
    value = b0 & 0x0F;
    min_value = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    width = 4;
    value = b0 & 0x07;
    min_value = 0x10000;
  } else {
    return {0, 0};
  }
  if (i + width > s.size()) return {0, 0};
  for (std::size_t k = 1; k < width; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0, 0};
    value = (value << 6) | (b & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    return {0, 0};
  }
  return {value, width};
}

}  // namespace

std::optional<std::size_t> find_invalid(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const Decoded d = decode_one(bytes, i);
    if (d.width == 0) return i;
    i += d.width;
  }
  return std::nullopt;
}

std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const Decoded d = decode_one(bytes, i);
    if (d.width == 0) {
      throw input_error("invalid UTF-8 at byte offset " + std::to_string(i));
    }
    out.push_back(d.value);
    i += d.width;
  }
  return out;
}

std::string encode(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t c : chars) out += encode(c);
  return out;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_upper(char32_t c) {
  if (c >= U'A' && c <= U'Z') return true;
  return c >= 0xC0 && c <= 0xDE && c != 0xD7;
}

bool is_lower(char32_t c) {
  if (c >= U'a' && c <= U'z') return true;
  return c >= 0xDF && c <= 0xFF && c != 0xF7;
}

bool is_letter(char32_t c) { return is_upper(c) || is_lower(c); }

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

std::u32string to_lower(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) c = to_lower(c);
  return out;
}

std::string fold_case(std::string_view utf8_text) {
  return encode(to_lower(decode(utf8_text)));
}

std::size_t length(std::string_view utf8_text) {
  std::size_t n = 0;
  for (char ch : utf8_text) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace corpusmap::utf8
