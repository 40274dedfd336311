#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace medlex {

/// Trims outer whitespace, collapses inner whitespace runs to one space and
/// applies NFC. With `lowercase` set the result is also lowercased using the
/// root locale. Throws std::invalid_argument("empty term") when nothing is
/// left after trimming.
std::string normalize_term(std::string_view raw, bool lowercase);

/// Lowercase + NFC of a single token; no whitespace handling, never throws.
std::string fold_case(std::string_view token);

// UTF-8 helpers. All "character" positions in this library are code point
// indices.
std::size_t utf8_length(std::string_view s);
std::size_t utf8_char_index(std::string_view s, std::size_t byte_offset);
inline bool utf8_is_boundary(std::string_view s, std::size_t byte_offset) {
  return byte_offset >= s.size() ||
         (static_cast<unsigned char>(s[byte_offset]) & 0xC0) != 0x80;
}

bool is_unicode_space(char32_t cp);
bool is_unicode_punct(char32_t cp);

/// Decodes one code point starting at `pos` and advances `pos`. Malformed
/// sequences decode as U+FFFD and consume one byte.
char32_t utf8_next(std::string_view s, std::size_t& pos);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim_ascii(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace medlex
