#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. All strings in the library are UTF-8.
namespace authorship::unicode {

// Converts bytes in the named charset to UTF-8. Throws InputError if the
// charset is unknown or the bytes are not valid in it.
std::string to_utf8(std::string_view bytes, std::string_view charset);

// True if ICU has a converter for `charset`.
bool is_known_charset(std::string_view charset);

bool is_valid_utf8(std::string_view bytes);

// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

// Decodes UTF-8 into code points. Input must be valid UTF-8.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

std::size_t length(std::string_view utf8);

bool is_letter(char32_t cp);
bool is_mark(char32_t cp);
bool is_decimal_digit(char32_t cp);
bool is_whitespace(char32_t cp);
char32_t to_lower(char32_t cp);

} // namespace authorship::unicode
