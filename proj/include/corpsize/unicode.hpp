#pragma once

// Minimal UTF-8 handling and code point classification.
//
// Classification is table-free on purpose: anything outside the listed
// punctuation/symbol blocks counts as a word character, which is what a
// whitespace tokenizer over Cyrillic, Latin or Mongolian script needs.

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "corpsize/errors.hpp"

namespace corpsize::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

struct DecodedChar {
  char32_t cp;
  std::size_t length;  // bytes consumed, >= 1
  bool valid;
};

/// Decodes one code point at `pos`. Malformed input yields U+FFFD with
/// valid=false and length 1.
inline DecodedChar decode_at(std::string_view s, std::size_t pos) noexcept {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1, true};

  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return {kReplacement, 1, false};
  }
  if (pos + len > s.size()) return {kReplacement, 1, false};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {kReplacement, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  // overlong forms, surrogates and out-of-range values
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    return {kReplacement, 1, false};
  return {cp, len, true};
}

/// Offset of the first malformed byte, if any.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view s) noexcept {
  for (std::size_t pos = 0; pos < s.size();) {
    const auto d = decode_at(s, pos);
    if (!d.valid) return pos;
    pos += d.length;
  }
  return std::nullopt;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Unicode White_Space property.
constexpr bool is_space(char32_t cp) noexcept {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

/// Arabic numerals only; other numeric scripts are treated as letters.
constexpr bool is_ascii_digit(char32_t cp) noexcept { return cp >= U'0' && cp <= U'9'; }

/// True for letters, digits and combining marks; false for punctuation,
/// symbols, controls and whitespace.
constexpr bool is_word_char(char32_t cp) noexcept {
  if (cp < 0x80) return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
                        (cp >= U'A' && cp <= U'Z');
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp == 0x37E || cp == 0x387) return false;                      // Greek punctuation
  if (cp == 0x482 || (cp >= 0x55A && cp <= 0x55F) || cp == 0x589) return false;
  if (cp >= 0x1800 && cp <= 0x180A) return false;                    // Mongolian punctuation
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;                    // punctuation, symbols, arrows
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;                    // CJK punctuation
  if (cp >= 0xE000 && cp <= 0xF8FF) return false;                    // private use
  if (cp >= 0xFE10 && cp <= 0xFE6F) return false;
  if ((cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
      (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65))
    return false;
  if (cp == kReplacement || cp == 0xFEFF) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;                  // emoji, pictographs
  return true;
}

/// Simple one-to-one lowercase mapping for Latin-1, Greek and Cyrillic.
constexpr char32_t fold_case(char32_t cp) noexcept {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if ((cp >= 0x460 && cp <= 0x481) || (cp >= 0x48A && cp <= 0x4BF) ||
      (cp >= 0x4D0 && cp <= 0x52F))
    return cp | 1;
  if (cp == 0x4C0) return 0x4CF;
  if (cp >= 0x4C1 && cp <= 0x4CE) return (cp & 1) ? cp + 1 : cp;
  return cp;
}

enum class Encoding { utf8, windows1251, latin1 };

/// Accepts common spellings: "UTF-8", "utf8", "cp1251", "windows-1251",
/// "latin1", "ISO-8859-1".
inline Encoding parse_encoding(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key.empty() || key == "utf8") return Encoding::utf8;
  if (key == "windows1251" || key == "cp1251") return Encoding::windows1251;
  if (key == "latin1" || key == "iso88591") return Encoding::latin1;
  throw ConfigError("unsupported encoding '" + std::string(name) + "'");
}

inline std::string_view encoding_name(Encoding e) noexcept {
  switch (e) {
    case Encoding::utf8: return "UTF-8";
    case Encoding::windows1251: return "windows-1251";
    case Encoding::latin1: return "ISO-8859-1";
  }
  return "UTF-8";
}

namespace detail {
// windows-1251 bytes 0x80..0xBF; 0 marks the single undefined byte (0x98).
inline constexpr std::array<char16_t, 64> kCp1251High = {
    0x0402, 0x0403, 0x201A, 0x0453, 0x201E, 0x2026, 0x2020, 0x2021,
    0x20AC, 0x2030, 0x0409, 0x2039, 0x040A, 0x040C, 0x040B, 0x040F,
    0x0452, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x0000, 0x2122, 0x0459, 0x203A, 0x045A, 0x045C, 0x045B, 0x045F,
    0x00A0, 0x040E, 0x045E, 0x0408, 0x00A4, 0x0490, 0x00A6, 0x00A7,
    0x0401, 0x00A9, 0x0404, 0x00AB, 0x00AC, 0x00AD, 0x00AE, 0x0407,
    0x00B0, 0x00B1, 0x0406, 0x0456, 0x0491, 0x00B5, 0x00B6, 0x00B7,
    0x0451, 0x2116, 0x0454, 0x00BB, 0x0458, 0x0405, 0x0455, 0x0457};
}  // namespace detail

/// Converts raw file bytes to validated UTF-8. A leading UTF-8 BOM is dropped.
/// Throws IngestError naming `source` and the byte offset of the first bad byte.
inline std::string to_utf8(std::string_view bytes, Encoding enc, std::string_view source) {
  auto fail = [&](std::size_t offset) {
    return IngestError("cannot decode " + std::string(source) + " as " +
                       std::string(encoding_name(enc)) + ": invalid byte at offset " +
                       std::to_string(offset));
  };
  if (enc == Encoding::utf8) {
    std::size_t skip = bytes.starts_with("\xEF\xBB\xBF") ? 3 : 0;
    if (auto bad = find_invalid_utf8(bytes.substr(skip))) throw fail(*bad + skip);
    return std::string(bytes.substr(skip));
  }
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const auto b = static_cast<unsigned char>(bytes[i]);
    char32_t cp = b;
    if (enc == Encoding::windows1251) {
      if (b >= 0xC0) {
        cp = 0x410 + (b - 0xC0);
      } else if (b >= 0x80) {
        cp = detail::kCp1251High[b - 0x80];
        if (cp == 0) throw fail(i);
      }
    }
    append_utf8(out, cp);
  }
  return out;
}

}  // namespace corpsize::unicode
